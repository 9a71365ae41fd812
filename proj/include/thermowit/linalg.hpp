#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace thermowit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues and a
/// unitary of column eigenvectors with a fixed phase convention.
struct Spectrum {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns, phase-fixed

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
    }
};

int dims_product(const Dims& dims);

double max_abs(const Matrix& a);

/// max_ij |a_ij - conj(a_ji)|
double hermiticity_defect(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = 1e-9);

/// Kronecker product with the left factor's index varying slowest.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Reduce a composite-system matrix to the subsystems listed in `keep`
/// (original relative order). `dims` lists subsystem dimensions, leftmost
/// varying slowest; their product must equal the matrix dimension.
Matrix partial_trace(const Matrix& m, const Dims& dims, const std::vector<int>& keep);

/// Eigendecomposition with deterministic output: eigenvalues ascending and
/// each eigenvector's first non-negligible component rotated to the positive
/// real axis. Throws ValidationError when `a` is not Hermitian to `herm_tol`.
Spectrum hermitian_spectrum(const Matrix& a, double herm_tol = 1e-9);

/// Trace norm of a Hermitian matrix (sum of absolute eigenvalues).
double trace_norm_hermitian(const Matrix& a);

/// Embed `op` as the k-th factor of a tensor product with identities
/// elsewhere; `dims` gives all factor dimensions.
Matrix embed(const Matrix& op, const Dims& dims, int k);

}  // namespace thermowit
