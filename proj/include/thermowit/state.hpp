#pragma once

#include <optional>

#include "thermowit/linalg.hpp"

namespace thermowit {

// Natural logarithm throughout; energies dimensionless (k_B = hbar = 1).

/// Positive unit-trace Hermitian matrix with subsystem dimension metadata.
/// Validated on construction: Hermiticity and unit trace to 1e-9, smallest
/// eigenvalue >= -1e-9. Eigenvalues in [-1e-9, 0) are clamped to 0 on read.
class DensityMatrix {
public:
    DensityMatrix(Matrix matrix, Dims dims);

    const Matrix& matrix() const { return mat_; }
    const Dims& dims() const { return dims_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

    /// Ascending eigenvalues, clamped to [0, 1].
    const RealVector& eigenvalues() const { return evals_; }

private:
    Matrix mat_;
    Dims dims_;
    RealVector evals_;
};

/// Hermitian observable with cached ascending spectrum and eigenbasis.
class Hamiltonian {
public:
    Hamiltonian(Matrix matrix, Dims dims);

    const Matrix& matrix() const { return mat_; }
    const Dims& dims() const { return dims_; }
    int dim() const { return static_cast<int>(mat_.rows()); }
    const RealVector& spectrum() const { return spec_.eigenvalues; }
    const Matrix& eigenbasis() const { return spec_.eigenvectors; }

    double ground_energy() const { return spec_.eigenvalues(0); }
    double top_energy() const { return spec_.eigenvalues(dim() - 1); }
    double spectral_range() const { return top_energy() - ground_energy(); }

    /// Number of eigenvalues within tolerance of the extremal one.
    int ground_multiplicity() const;
    int top_multiplicity() const;

private:
    Matrix mat_;
    Dims dims_;
    Spectrum spec_;
};

/// d-level ladder Hamiltonian diag(0, 1, ..., d-1) on a single subsystem.
Hamiltonian ladder_hamiltonian(int d);

/// Sum of identical local Hamiltonians over n parties, dims replicated.
Hamiltonian local_sum_hamiltonian(const Hamiltonian& local, int n_parties);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Thermal-family state e^{-xH}/Z(x); x may be any real (negative x encodes
/// population inversion). Computed in the eigenbasis with a max-shift so
/// large |x * energy| cannot overflow.
DensityMatrix gibbs_state(const Hamiltonian& h, double x);

/// Populations of gibbs_state(h, x) in the energy eigenbasis.
RealVector gibbs_populations(const Hamiltonian& h, double x);

/// The x -> +/-infinity limit of the thermal family: the maximally mixed
/// state on the ground (toward_positive_x) or top eigenvalue multiplicity
/// space.
DensityMatrix gibbs_limit_state(const Hamiltonian& h, bool toward_positive_x);

/// log tr(e^{-xH}) via log-sum-exp.
double log_partition(const Hamiltonian& h, double x);

double gibbs_energy(const Hamiltonian& h, double x);
double gibbs_entropy(const Hamiltonian& h, double x);
/// E(gamma(x)) - S(gamma(x))/beta.
double gibbs_free_energy(const Hamiltonian& h, double x, double beta);

double von_neumann_entropy(const DensityMatrix& rho);

/// h(p) = -p log p - (1-p) log(1-p); requires p in [0, 1].
double binary_entropy(double p);

/// D(rho||sigma); returns +infinity when the support condition fails
/// (a sigma-eigenvalue below 1e-12 carrying rho-weight above 1e-10).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// S(A|B) = S(rho) - S(tr_A rho). `a` and `b` must partition the subsystems.
double conditional_entropy(const DensityMatrix& rho, const std::vector<int>& a,
                           const std::vector<int>& b);

/// I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB).
double mutual_information(const DensityMatrix& rho, const std::vector<int>& a,
                          const std::vector<int>& b);

/// tr[rho H]; throws NumericalError when the imaginary residue exceeds 1e-8.
double average_energy(const DensityMatrix& rho, const Hamiltonian& h);

/// F_beta(rho) = E(rho) - S(rho)/beta; requires beta > 0.
double free_energy(const DensityMatrix& rho, const Hamiltonian& h, double beta);

/// Projection onto the diagonal of h's (deterministic) eigenbasis.
DensityMatrix dephase(const DensityMatrix& rho, const Hamiltonian& h);

/// Relative entropy of coherence, computed as S(dephased) - S(rho).
double rel_entropy_of_coherence(const DensityMatrix& rho, const Hamiltonian& h);

/// Trace norm ||rho - sigma||_1 (no 1/2 prefactor); value in [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace thermowit
