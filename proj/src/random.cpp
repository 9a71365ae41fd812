#include "thermowit/random.hpp"

#include "thermowit/errors.hpp"

namespace thermowit {

namespace {

Matrix ginibre(int dim, Rng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    return g;
}

Vector random_ket(int dim, Rng& rng) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
    v /= v.norm();
    return v;
}

}  // namespace

DensityMatrix random_density_matrix(int dim, Rng& rng) {
    if (dim < 1) throw ValidationError("random_density_matrix: dim must be >= 1");
    const Matrix g = ginibre(dim, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix((rho + rho.adjoint()) / 2.0, Dims{dim});
}

DensityMatrix random_density_matrix(int dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_density_matrix(dim, rng);
}

DensityMatrix random_pure_state(int dim, Rng& rng) {
    const Vector v = random_ket(dim, rng);
    return DensityMatrix(v * v.adjoint(), Dims{dim});
}

DensityMatrix random_pure_state(const Dims& dims, std::uint64_t seed) {
    Rng rng(seed);
    const Vector v = random_ket(dims_product(dims), rng);
    return DensityMatrix(v * v.adjoint(), dims);
}

DensityMatrix random_separable_state(const Dims& dims, int k, std::uint64_t seed) {
    if (k < 1) throw ValidationError("random_separable_state: k must be >= 1");
    Rng rng(seed);
    const int total = dims_product(dims);

    RealVector weights(k);
    for (int i = 0; i < k; ++i) weights(i) = rng.exponential();
    weights /= weights.sum();

    Matrix rho = Matrix::Zero(total, total);
    for (int i = 0; i < k; ++i) {
        Matrix prod = Matrix::Identity(1, 1);
        for (int d : dims) {
            const Vector v = random_ket(d, rng);
            prod = tensor_product(prod, Matrix(v * v.adjoint()));
        }
        rho += weights(i) * prod;
    }
    return DensityMatrix((rho + rho.adjoint()) / 2.0, dims);
}

DensityMatrix random_incoherent_state(int dim, std::uint64_t seed) {
    if (dim < 1) throw ValidationError("random_incoherent_state: dim must be >= 1");
    Rng rng(seed);
    RealVector p(dim);
    for (int i = 0; i < dim; ++i) p(i) = rng.exponential();
    p /= p.sum();
    Matrix rho = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) rho(i, i) = p(i);
    return DensityMatrix(std::move(rho), Dims{dim});
}

Matrix random_hermitian(int dim, Rng& rng) {
    const Matrix g = ginibre(dim, rng);
    return (g + g.adjoint()) / 2.0;
}

Matrix random_unitary(int dim, Rng& rng) {
    return hermitian_spectrum(random_hermitian(dim, rng)).eigenvectors;
}

}  // namespace thermowit
