#include "thermowit/tavis_cummings.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thermowit/errors.hpp"
#include "thermowit/threads.hpp"

namespace thermowit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix kron3(const Matrix& a, const Matrix& b, const Matrix& c) {
    return tensor_product(tensor_product(a, b), c);
}

Matrix unitary_at(const Hamiltonian& h, double t) {
    const RealVector& w = h.spectrum();
    Vector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        phases(i) = std::exp(Complex(0.0, -w(i) * t));
    return h.eigenbasis() * phases.asDiagonal() * h.eigenbasis().adjoint();
}

double field_top_two_population(const Matrix& field_state) {
    const int n = static_cast<int>(field_state.rows());
    return field_state(n - 1, n - 1).real() + field_state(n - 2, n - 2).real();
}

}  // namespace

TCModel build_tc_model(double epsilon, double g, int n_max, double beta) {
    if (n_max < 2) throw ValidationError("build_tc_model: n_max must be >= 2");
    if (g < 0.0) throw ValidationError("build_tc_model: g must be >= 0");
    if (beta <= 0.0) throw ValidationError("build_tc_model: beta must be > 0");

    Matrix a = Matrix::Zero(n_max, n_max);
    for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    Matrix sigma = Matrix::Zero(2, 2);
    sigma(0, 1) = 1.0;  // lowering operator, ground |0>, excited |1>

    const Matrix i2 = Matrix::Identity(2, 2);
    const Matrix im = Matrix::Identity(n_max, n_max);
    const Matrix num_spin = sigma.adjoint() * sigma;
    const Matrix num_field = a.adjoint() * a;
    const Dims dims{2, n_max, 2};

    Matrix excitation =
        kron3(num_spin, im, i2) + kron3(i2, num_field, i2) + kron3(i2, im, num_spin);
    Matrix h_free = epsilon * excitation;
    Matrix v = g * (kron3(sigma.adjoint(), a, i2) + kron3(i2, a, sigma.adjoint()));
    Matrix v_int = v + v.adjoint();

    Matrix h_total = h_free + v_int;
    if (hermiticity_defect(h_total) > 1e-10)
        throw NumericalError("build_tc_model: total Hamiltonian not Hermitian to 1e-10");
    if (max_abs(h_free * v_int - v_int * h_free) > 1e-10)
        throw NumericalError("build_tc_model: excitation number not conserved");

    Hamiltonian h_spin(epsilon * num_spin, Dims{2});
    Hamiltonian h_field(epsilon * num_field, Dims{n_max});
    DensityMatrix gamma_env = gibbs_state(h_spin, beta);
    DensityMatrix gamma_field = gibbs_state(h_field, beta);

    return TCModel{epsilon,
                   g,
                   n_max,
                   beta,
                   dims,
                   Hamiltonian(std::move(h_total), dims),
                   std::move(h_free),
                   std::move(v_int),
                   std::move(excitation),
                   std::move(h_spin),
                   std::move(h_field),
                   std::move(gamma_env),
                   std::move(gamma_field)};
}

DensityMatrix coherent_input_state(double beta, double epsilon) {
    if (beta < 0.0) throw ValidationError("coherent_input_state: beta must be >= 0");
    Vector psi(2);
    psi(0) = 1.0;
    psi(1) = std::exp(-beta * epsilon / 2.0);
    psi /= std::sqrt(1.0 + std::exp(-beta * epsilon));
    return DensityMatrix(psi * psi.adjoint(), Dims{2});
}

Matrix propagator(const TCModel& model, double t) {
    if (!std::isfinite(t)) throw ValidationError("propagator: t must be finite");
    return unitary_at(model.total, t);
}

namespace {

// One application of the cycle map Lambda.
Matrix apply_cycle(const TCModel& m, const Matrix& u, const Matrix& rho_s, const Matrix& omega) {
    const Matrix composite = kron3(rho_s, omega, m.gamma_env.matrix());
    const Matrix evolved = u * composite * u.adjoint();
    return partial_trace(evolved, m.dims, {1});
}

DensityMatrix project_to_state(const Matrix& raw, int n_max) {
    Matrix herm = (raw + raw.adjoint()) / 2.0;
    const Spectrum s = hermitian_spectrum(herm, 1e-6);
    RealVector clipped = s.eigenvalues.cwiseMax(0.0);
    const double tr = clipped.sum();
    if (tr <= 0.0) throw SolverError("memory_fixed_point: projected state has zero trace");
    clipped /= tr;
    Matrix out = s.eigenvectors * clipped.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
    return DensityMatrix((out + out.adjoint()) / 2.0, Dims{n_max});
}

}  // namespace

FixedPointResult memory_fixed_point(const TCModel& model, const DensityMatrix& rho_s, double tau,
                                    double leakage_threshold) {
    if (tau <= 0.0) throw ValidationError("memory_fixed_point: tau must be > 0");
    if (rho_s.dim() != 2) throw ValidationError("memory_fixed_point: rho_s must be a qubit state");

    const Matrix u = propagator(model, tau);
    const int n = model.n_max;

    FixedPointInfo info;
    Matrix omega = model.gamma_field.matrix();
    double residual = kInf;
    constexpr int kMaxIters = 100000;
    constexpr int kWindow = 500;
    double windowed_residual = kInf;
    bool stagnated = false;

    for (int k = 1; k <= kMaxIters; ++k) {
        const Matrix next = apply_cycle(model, u, rho_s.matrix(), omega);
        residual = trace_norm_hermitian(next - omega);
        omega = next;
        info.iterations = k;
        if (residual <= 1e-12) break;
        if (k % kWindow == 0) {
            if (residual > 0.6 * windowed_residual) {
                stagnated = true;
                break;
            }
            windowed_residual = residual;
        }
    }

    if (residual > 1e-12 || stagnated) {
        // Spectral fallback: eigenvector of the cycle superoperator nearest
        // eigenvalue 1, projected back to a density matrix.
        info.spectral_fallback = true;
        Matrix super(n * n, n * n);
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k) {
                Matrix unit = Matrix::Zero(n, n);
                unit(k, l) = 1.0;
                const Matrix mapped = apply_cycle(model, u, rho_s.matrix(), unit);
                super.col(k + l * n) = Eigen::Map<const Vector>(mapped.data(), n * n);
            }
        Eigen::ComplexEigenSolver<Matrix> solver(super);
        if (solver.info() != Eigen::Success)
            throw SolverError("memory_fixed_point: superoperator eigensolver failed");

        int best = 0;
        double best_dist = kInf;
        for (int i = 0; i < n * n; ++i) {
            const double dist = std::abs(solver.eigenvalues()(i) - Complex(1.0, 0.0));
            if (dist < best_dist) {
                best_dist = dist;
                best = i;
            }
            if (dist <= 1e-9) ++info.unit_eigenvalue_count;
        }
        Vector vec = solver.eigenvectors().col(best);
        Matrix raw = Eigen::Map<const Matrix>(vec.data(), n, n);
        const Complex tr = raw.trace();
        if (std::abs(tr) < 1e-12)
            throw SolverError("memory_fixed_point: traceless fixed-point candidate");
        raw /= tr;
        omega = project_to_state(raw, n).matrix();
        residual = trace_norm_hermitian(apply_cycle(model, u, rho_s.matrix(), omega) - omega);
    }

    if (residual > 1e-10) {
        std::ostringstream msg;
        msg << "memory_fixed_point: residual " << residual << " above 1e-10 after "
            << info.iterations << " iterations"
            << (info.spectral_fallback ? " and spectral fallback" : "");
        throw SolverError(msg.str());
    }
    info.residual = residual;

    DensityMatrix omega_state((omega + omega.adjoint()) / 2.0, Dims{n});
    const double leak = field_top_two_population(omega_state.matrix());
    if (leak > leakage_threshold) {
        std::ostringstream msg;
        msg << "memory_fixed_point: top-two Fock population " << leak << " exceeds threshold "
            << leakage_threshold << "; increase n_max";
        throw TruncationError(msg.str());
    }
    return FixedPointResult{std::move(omega_state), info};
}

double leakage_check(const DensityMatrix& state) {
    if (state.dims().size() != 3)
        throw ValidationError("leakage_check: expected a composite (S, M, E) state");
    const Matrix field = partial_trace(state.matrix(), state.dims(), {1});
    return field_top_two_population(field);
}

TCTrajectory run_trajectory(const TCModel& model, const DensityMatrix& rho_s, double tau,
                            int steps, double leakage_threshold) {
    if (steps < 2) throw ValidationError("run_trajectory: steps must be >= 2");

    FixedPointResult fp = memory_fixed_point(model, rho_s, tau, leakage_threshold);
    const Matrix rho0 =
        kron3(rho_s.matrix(), fp.omega.matrix(), model.gamma_env.matrix());
    const double e0 = (model.total.matrix() * rho0).trace().real();
    const double thermal_excitation = model.gamma_env.matrix()(1, 1).real();

    TCTrajectory traj;
    traj.fixed_point = fp.info;
    traj.times.resize(static_cast<std::size_t>(steps));
    traj.q.resize(static_cast<std::size_t>(steps));
    traj.delta.resize(static_cast<std::size_t>(steps));
    traj.energy_drift.resize(static_cast<std::size_t>(steps));
    traj.leakage.resize(static_cast<std::size_t>(steps));

    parallel_for(steps, [&](int k) {
        const auto i = static_cast<std::size_t>(k);
        const double t = tau * static_cast<double>(k) / (steps - 1);
        const Matrix u = unitary_at(model.total, t);
        const Matrix eta = u * rho0 * u.adjoint();
        const Matrix eta_m = partial_trace(eta, model.dims, {1});
        const Matrix eta_e = partial_trace(eta, model.dims, {2});

        traj.times[i] = t;
        traj.q[i] = model.epsilon * (eta_e(1, 1).real() - thermal_excitation);
        traj.delta[i] = trace_norm_hermitian(fp.omega.matrix() - eta_m);
        traj.energy_drift[i] = (model.total.matrix() * eta).trace().real() - e0;
        traj.leakage[i] = field_top_two_population(eta_m);
    });

    traj.max_q = *std::max_element(traj.q.begin(), traj.q.end());
    traj.final_delta = traj.delta.back();
    traj.max_leakage = *std::max_element(traj.leakage.begin(), traj.leakage.end());
    return traj;
}

}  // namespace thermowit
