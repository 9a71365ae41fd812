#include "thermowit/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "thermowit/errors.hpp"

namespace thermowit {

int dims_product(const Dims& dims) {
    int p = 1;
    for (int d : dims) {
        if (d < 1) throw ValidationError("subsystem dimension must be >= 1");
        p *= d;
    }
    return p;
}

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("matrix is not square");
    return max_abs(a - a.adjoint());
}

bool is_hermitian(const Matrix& a, double tol) { return hermiticity_defect(a) <= tol; }

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols();
    const Eigen::Index rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

namespace {

// Row-major strides, leftmost subsystem slowest.
std::vector<int> strides_of(const Dims& dims) {
    std::vector<int> s(dims.size());
    int acc = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        s[static_cast<std::size_t>(k)] = acc;
        acc *= dims[static_cast<std::size_t>(k)];
    }
    return s;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const Dims& dims, const std::vector<int>& keep) {
    const int n = static_cast<int>(dims.size());
    const int total = dims_product(dims);
    if (m.rows() != total || m.cols() != total)
        throw ValidationError("partial_trace: dims do not match matrix size");
    if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");

    std::vector<bool> kept(static_cast<std::size_t>(n), false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw ValidationError("partial_trace: subsystem index out of range");
        if (kept[static_cast<std::size_t>(k)])
            throw ValidationError("partial_trace: duplicate subsystem index");
        kept[static_cast<std::size_t>(k)] = true;
    }

    std::vector<int> keep_sorted;   // original relative order
    std::vector<int> traced;
    for (int k = 0; k < n; ++k) (kept[static_cast<std::size_t>(k)] ? keep_sorted : traced).push_back(k);

    const auto strides = strides_of(dims);
    int dim_keep = 1, dim_tr = 1;
    for (int k : keep_sorted) dim_keep *= dims[static_cast<std::size_t>(k)];
    for (int k : traced) dim_tr *= dims[static_cast<std::size_t>(k)];

    // Flat offset of a multi-index enumerated over the given subsystem list.
    auto offsets = [&](const std::vector<int>& subs, int count) {
        std::vector<int> off(static_cast<std::size_t>(count), 0);
        std::vector<int> idx(subs.size(), 0);
        for (int c = 0; c < count; ++c) {
            int o = 0;
            for (std::size_t j = 0; j < subs.size(); ++j)
                o += idx[j] * strides[static_cast<std::size_t>(subs[j])];
            off[static_cast<std::size_t>(c)] = o;
            for (int j = static_cast<int>(subs.size()) - 1; j >= 0; --j) {
                auto ju = static_cast<std::size_t>(j);
                if (++idx[ju] < dims[static_cast<std::size_t>(subs[ju])]) break;
                idx[ju] = 0;
            }
        }
        return off;
    };

    const auto keep_off = offsets(keep_sorted, dim_keep);
    const auto tr_off = offsets(traced, dim_tr);

    Matrix out = Matrix::Zero(dim_keep, dim_keep);
    for (int i = 0; i < dim_keep; ++i)
        for (int j = 0; j < dim_keep; ++j) {
            Complex acc(0.0, 0.0);
            for (int t = 0; t < dim_tr; ++t)
                acc += m(keep_off[static_cast<std::size_t>(i)] + tr_off[static_cast<std::size_t>(t)],
                         keep_off[static_cast<std::size_t>(j)] + tr_off[static_cast<std::size_t>(t)]);
            out(i, j) = acc;
        }
    return out;
}

Spectrum hermitian_spectrum(const Matrix& a, double herm_tol) {
    if (a.rows() != a.cols()) throw ValidationError("hermitian_spectrum: matrix is not square");
    if (!is_hermitian(a, herm_tol))
        throw ValidationError("hermitian_spectrum: matrix is not Hermitian within tolerance");

    Eigen::SelfAdjointEigenSolver<Matrix> solver((a + a.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw SolverError("hermitian_spectrum: eigensolver failed");

    Spectrum s;
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = solver.eigenvectors();

    // Fix each column's global phase: first non-negligible component real > 0.
    const Eigen::Index d = s.eigenvectors.rows();
    for (Eigen::Index c = 0; c < d; ++c) {
        double col_max = s.eigenvectors.col(c).cwiseAbs().maxCoeff();
        for (Eigen::Index r = 0; r < d; ++r) {
            const Complex v = s.eigenvectors(r, c);
            if (std::abs(v) > 1e-12 * col_max) {
                s.eigenvectors.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return s;
}

double trace_norm_hermitian(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((a + a.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw SolverError("trace_norm_hermitian: eigensolver failed");
    return solver.eigenvalues().cwiseAbs().sum();
}

Matrix embed(const Matrix& op, const Dims& dims, int k) {
    const int n = static_cast<int>(dims.size());
    if (k < 0 || k >= n) throw ValidationError("embed: subsystem index out of range");
    if (op.rows() != dims[static_cast<std::size_t>(k)])
        throw ValidationError("embed: operator does not match subsystem dimension");
    Matrix out = Matrix::Identity(1, 1);
    for (int j = 0; j < n; ++j) {
        const int dj = dims[static_cast<std::size_t>(j)];
        out = tensor_product(out, j == k ? op : Matrix(Matrix::Identity(dj, dj)));
    }
    return out;
}

}  // namespace thermowit
