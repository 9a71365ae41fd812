#include "thermowit/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermowit/errors.hpp"

namespace thermowit {

namespace {

constexpr double kHermTol = 1e-9;
constexpr double kTraceTol = 1e-9;
constexpr double kPsdTol = 1e-9;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double entropy_of_probs(const RealVector& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) s -= xlogx(p(i));
    return s;
}

void check_same_dims(const Dims& a, const Dims& b, const char* who) {
    if (a != b) throw ValidationError(std::string(who) + ": subsystem dimensions differ");
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix matrix, Dims dims) : mat_(std::move(matrix)), dims_(std::move(dims)) {
    if (mat_.rows() != mat_.cols()) throw ValidationError("DensityMatrix: matrix is not square");
    if (dims_.empty()) dims_ = {static_cast<int>(mat_.rows())};
    if (dims_product(dims_) != mat_.rows())
        throw ValidationError("DensityMatrix: dims product does not match matrix dimension");
    if (hermiticity_defect(mat_) > kHermTol)
        throw ValidationError("DensityMatrix: matrix is not Hermitian within 1e-9");
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol)
        throw ValidationError("DensityMatrix: trace differs from 1 by more than 1e-9");

    Eigen::SelfAdjointEigenSolver<Matrix> solver((mat_ + mat_.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SolverError("DensityMatrix: eigensolver failed");
    evals_ = solver.eigenvalues();
    if (evals_(0) < -kPsdTol)
        throw ValidationError("DensityMatrix: smallest eigenvalue below -1e-9");
    for (Eigen::Index i = 0; i < evals_.size(); ++i)
        evals_(i) = std::clamp(evals_(i), 0.0, 1.0);
}

Hamiltonian::Hamiltonian(Matrix matrix, Dims dims) : mat_(std::move(matrix)), dims_(std::move(dims)) {
    if (mat_.rows() != mat_.cols()) throw ValidationError("Hamiltonian: matrix is not square");
    if (dims_.empty()) dims_ = {static_cast<int>(mat_.rows())};
    if (dims_product(dims_) != mat_.rows())
        throw ValidationError("Hamiltonian: dims product does not match matrix dimension");
    spec_ = hermitian_spectrum(mat_, kHermTol);
}

namespace {
int multiplicity_at(const RealVector& spec, double value, double range) {
    const double tol = 1e-9 * std::max(1.0, range);
    int m = 0;
    for (Eigen::Index i = 0; i < spec.size(); ++i)
        if (std::abs(spec(i) - value) <= tol) ++m;
    return m;
}
}  // namespace

int Hamiltonian::ground_multiplicity() const {
    return multiplicity_at(spec_.eigenvalues, ground_energy(), spectral_range());
}

int Hamiltonian::top_multiplicity() const {
    return multiplicity_at(spec_.eigenvalues, top_energy(), spectral_range());
}

Hamiltonian ladder_hamiltonian(int d) {
    if (d < 1) throw ValidationError("ladder_hamiltonian: d must be >= 1");
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = static_cast<double>(i);
    return Hamiltonian(std::move(m), Dims{d});
}

Hamiltonian local_sum_hamiltonian(const Hamiltonian& local, int n_parties) {
    if (n_parties < 1) throw ValidationError("local_sum_hamiltonian: n_parties must be >= 1");
    Dims dims;
    for (int k = 0; k < n_parties; ++k)
        dims.insert(dims.end(), local.dims().begin(), local.dims().end());
    // Treat each party as one block of the replicated dims list.
    const int block = static_cast<int>(local.dims().size());
    Matrix total = Matrix::Zero(dims_product(dims), dims_product(dims));
    for (int k = 0; k < n_parties; ++k) {
        Matrix left = Matrix::Identity(1, 1);
        for (int j = 0; j < n_parties; ++j) {
            const int dj = dims_product(Dims(dims.begin() + j * block, dims.begin() + (j + 1) * block));
            left = tensor_product(left, j == k ? local.matrix() : Matrix(Matrix::Identity(dj, dj)));
        }
        total += left;
    }
    return Hamiltonian(std::move(total), std::move(dims));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix(tensor_product(a.matrix(), b.matrix()), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    Matrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
    std::vector<int> sorted_keep = keep;
    std::sort(sorted_keep.begin(), sorted_keep.end());
    Dims dims;
    for (int k : sorted_keep) dims.push_back(rho.dims()[static_cast<std::size_t>(k)]);
    return DensityMatrix(std::move(reduced), std::move(dims));
}

RealVector gibbs_populations(const Hamiltonian& h, double x) {
    if (!std::isfinite(x)) throw ValidationError("gibbs_populations: x must be finite");
    const RealVector& e = h.spectrum();
    RealVector w(e.size());
    double m = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < e.size(); ++i) m = std::max(m, -x * e(i));
    double z = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i) {
        w(i) = std::exp(-x * e(i) - m);
        z += w(i);
    }
    w /= z;
    return w;
}

DensityMatrix gibbs_state(const Hamiltonian& h, double x) {
    const RealVector w = gibbs_populations(h, x);
    const Matrix& v = h.eigenbasis();
    Matrix m = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    return DensityMatrix((m + m.adjoint()) / 2.0, h.dims());
}

DensityMatrix gibbs_limit_state(const Hamiltonian& h, bool toward_positive_x) {
    const int d = h.dim();
    const double target = toward_positive_x ? h.ground_energy() : h.top_energy();
    const double tol = 1e-9 * std::max(1.0, h.spectral_range());
    RealVector w = RealVector::Zero(d);
    int m = 0;
    for (int i = 0; i < d; ++i)
        if (std::abs(h.spectrum()(i) - target) <= tol) {
            w(i) = 1.0;
            ++m;
        }
    w /= static_cast<double>(m);
    const Matrix& v = h.eigenbasis();
    Matrix mat = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    return DensityMatrix((mat + mat.adjoint()) / 2.0, h.dims());
}

double log_partition(const Hamiltonian& h, double x) {
    if (!std::isfinite(x)) throw ValidationError("log_partition: x must be finite");
    const RealVector& e = h.spectrum();
    double m = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < e.size(); ++i) m = std::max(m, -x * e(i));
    double z = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i) z += std::exp(-x * e(i) - m);
    return m + std::log(z);
}

double gibbs_energy(const Hamiltonian& h, double x) {
    const RealVector w = gibbs_populations(h, x);
    return w.dot(h.spectrum());
}

double gibbs_entropy(const Hamiltonian& h, double x) {
    return entropy_of_probs(gibbs_populations(h, x));
}

double gibbs_free_energy(const Hamiltonian& h, double x, double beta) {
    if (beta <= 0.0) throw ValidationError("gibbs_free_energy: beta must be > 0");
    const RealVector w = gibbs_populations(h, x);
    return w.dot(h.spectrum()) - entropy_of_probs(w) / beta;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_probs(rho.eigenvalues());
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("binary_entropy: p must lie in [0, 1]");
    return -xlogx(p) - xlogx(1.0 - p);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dims(rho.dims(), sigma.dims(), "relative_entropy");
    const Spectrum s = hermitian_spectrum(sigma.matrix());
    double tr_rho_log_sigma = 0.0;
    for (int j = 0; j < sigma.dim(); ++j) {
        const Vector v = s.eigenvectors.col(j);
        const double q = std::max(0.0, (v.adjoint() * rho.matrix() * v)(0, 0).real());
        const double sj = s.eigenvalues(j);
        if (sj < 1e-12) {
            if (q > 1e-10) return std::numeric_limits<double>::infinity();
            continue;
        }
        tr_rho_log_sigma += q * std::log(sj);
    }
    return -von_neumann_entropy(rho) - tr_rho_log_sigma;
}

namespace {
void check_partition(const DensityMatrix& rho, const std::vector<int>& a, const std::vector<int>& b) {
    const int n = static_cast<int>(rho.dims().size());
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int k : a) {
        if (k < 0 || k >= n) throw ValidationError("subsystem index out of range");
        ++count[static_cast<std::size_t>(k)];
    }
    for (int k : b) {
        if (k < 0 || k >= n) throw ValidationError("subsystem index out of range");
        ++count[static_cast<std::size_t>(k)];
    }
    for (int c : count)
        if (c != 1) throw ValidationError("index sets must partition the subsystems");
}
}  // namespace

double conditional_entropy(const DensityMatrix& rho, const std::vector<int>& a,
                           const std::vector<int>& b) {
    check_partition(rho, a, b);
    return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, b));
}

double mutual_information(const DensityMatrix& rho, const std::vector<int>& a,
                          const std::vector<int>& b) {
    check_partition(rho, a, b);
    return von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) -
           von_neumann_entropy(rho);
}

double average_energy(const DensityMatrix& rho, const Hamiltonian& h) {
    check_same_dims(rho.dims(), h.dims(), "average_energy");
    const Complex t = (rho.matrix() * h.matrix()).trace();
    if (std::abs(t.imag()) > 1e-8)
        throw NumericalError("average_energy: imaginary residue above 1e-8");
    return t.real();
}

double free_energy(const DensityMatrix& rho, const Hamiltonian& h, double beta) {
    if (beta <= 0.0) throw ValidationError("free_energy: beta must be > 0");
    return average_energy(rho, h) - von_neumann_entropy(rho) / beta;
}

DensityMatrix dephase(const DensityMatrix& rho, const Hamiltonian& h) {
    check_same_dims(rho.dims(), h.dims(), "dephase");
    const Matrix& v = h.eigenbasis();
    const Matrix in_basis = v.adjoint() * rho.matrix() * v;
    Matrix diag = Matrix::Zero(rho.dim(), rho.dim());
    for (int i = 0; i < rho.dim(); ++i) diag(i, i) = in_basis(i, i).real();
    Matrix out = v * diag * v.adjoint();
    return DensityMatrix((out + out.adjoint()) / 2.0, rho.dims());
}

double rel_entropy_of_coherence(const DensityMatrix& rho, const Hamiltonian& h) {
    return von_neumann_entropy(dephase(rho, h)) - von_neumann_entropy(rho);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    check_same_dims(rho.dims(), sigma.dims(), "trace_distance");
    return trace_norm_hermitian(rho.matrix() - sigma.matrix());
}

}  // namespace thermowit
