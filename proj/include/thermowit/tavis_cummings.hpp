#pragma once

#include <limits>
#include <vector>

#include "thermowit/state.hpp"

namespace thermowit {

/// Two resonant spins coupled to one truncated bosonic mode, subsystem
/// ordering (S, M, E) with dims (2, n_max, 2). The spin gap and the field
/// frequency are both epsilon; excitation number is conserved exactly in
/// the truncated space.
struct TCModel {
    double epsilon;
    double g;
    int n_max;
    double beta;
    Dims dims;                  // {2, n_max, 2}

    Hamiltonian total;          // free part + interaction
    Matrix h_free;
    Matrix v_int;
    Matrix excitation_number;   // sigma^dag sigma_S + a^dag a + sigma^dag sigma_E

    Hamiltonian h_spin;         // diag(0, epsilon)
    Hamiltonian h_field;        // epsilon * a^dag a on n_max levels
    DensityMatrix gamma_env;    // thermal spin at beta
    DensityMatrix gamma_field;  // thermal field at beta (fixed-point seed)
};

TCModel build_tc_model(double epsilon, double g, int n_max, double beta);

/// Pure qubit with amplitudes (1, e^{-beta epsilon/2}) / sqrt(1 + e^{-beta
/// epsilon}); its energy-basis dephasing is exactly the spin Gibbs state.
DensityMatrix coherent_input_state(double beta, double epsilon);

/// U(t) = e^{-i H t} from the cached eigendecomposition.
Matrix propagator(const TCModel& model, double t);

/// How the memory state was obtained and how well it closes the cycle.
struct FixedPointInfo {
    double residual = 0.0;        // ||Lambda(omega) - omega||_1
    int iterations = 0;
    bool spectral_fallback = false;
    int unit_eigenvalue_count = 0;  // superoperator eigenvalues within 1e-9 of 1 (fallback only)
};

struct FixedPointResult {
    DensityMatrix omega;
    FixedPointInfo info;
};

inline constexpr double kNoLeakageCheck = std::numeric_limits<double>::infinity();

/// Field state invariant under one interaction cycle: the fixed point of
/// Lambda(omega) = tr_SE[U(tau) (rho_S (x) omega (x) gamma_E) U(tau)^dag].
/// Power iteration from the thermal-field seed down to residual 1e-12
/// (at most 1e5 steps); on stagnation the n_max^2 x n_max^2 superoperator
/// is diagonalized and the eigenvector nearest eigenvalue 1 is projected
/// back to a density matrix. Throws SolverError when the final residual
/// exceeds 1e-10, TruncationError when the fixed point's top-two-level
/// population exceeds `leakage_threshold`.
FixedPointResult memory_fixed_point(const TCModel& model, const DensityMatrix& rho_s, double tau,
                                    double leakage_threshold = kNoLeakageCheck);

/// Population of the top two Fock levels of a composite (S, M, E) state.
double leakage_check(const DensityMatrix& state);

struct TCTrajectory {
    std::vector<double> times;
    std::vector<double> q;             // heat into E
    std::vector<double> delta;         // ||omega_M - eta_M(t)||_1
    std::vector<double> energy_drift;  // tr[H eta(t)] - tr[H eta(0)]
    std::vector<double> leakage;       // top-two-Fock-level population

    FixedPointInfo fixed_point;
    double max_q = 0.0;
    double final_delta = 0.0;
    double max_leakage = 0.0;
};

/// Heat and memory-distance time series on a uniform grid over [0, tau],
/// with the memory prepared in its fixed point.
TCTrajectory run_trajectory(const TCModel& model, const DensityMatrix& rho_s, double tau,
                            int steps, double leakage_threshold = kNoLeakageCheck);

}  // namespace thermowit
