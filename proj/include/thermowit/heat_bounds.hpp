#pragma once

#include <cstdint>
#include <optional>

#include "thermowit/state.hpp"

namespace thermowit {

/// The heat problem depends on the state only through (energy, entropy).
struct ScalarProblem {
    double energy;
    double entropy;
    double beta;
};

/// Roots beta_c <= beta <= beta_h of f(x, y) = 0 with y = E - S/beta.
/// beta_c is -infinity when the left root lies beyond the numerical cutoff
/// (the thermal family limit is then the maximally mixed state on the top
/// eigenvalue multiplicity space); beta_h is absent when y exceeds the
/// x -> +infinity limit of the Gibbs free energy.
struct BetaRoots {
    double beta_c = 0.0;
    std::optional<double> beta_h;
    bool degenerate = false;

    bool beta_c_is_sentinel() const { return !std::isfinite(beta_c); }
};

/// Extremal heats and the roots that produced them.
struct HeatBounds {
    double beta_c = 0.0;            // -infinity sentinel allowed
    std::optional<double> beta_h;   // absent when the heating branch is capped
    double q_c = 0.0;
    double q_h = 0.0;
    bool h_capped = false;          // q_h took the energy-cap branch
    bool degenerate = false;        // beta_c == beta_h == beta
};

/// Constraint function f(x, y) = y - F_beta(gamma(x)); continuous in x,
/// strictly decreasing in x below beta and increasing above (derivative
/// Var(H) * (x/beta - 1)). Requires beta > 0 and finite x.
double f_function(double x, double y, const Hamiltonian& h, double beta);

/// Locate the roots of f(x, y) = 0 for y = E - S/beta. Bracketing expands
/// outward from beta by doubling steps up to |x| = 1e4 / spectral range,
/// then bisection to interval width 1e-12 * max(1, |x|). Throws
/// InfeasibleError when y is below the Gibbs free energy beyond 1e-9.
BetaRoots find_beta_roots(const ScalarProblem& problem, const Hamiltonian& h);

/// Optimal heat exchange from scalar data: Q_c from the left root,
/// Q_h from the right root or the energy cap when that root is absent.
HeatBounds heat_bounds_scalar(const ScalarProblem& problem, const Hamiltonian& h);

HeatBounds heat_bounds(const DensityMatrix& rho, const Hamiltonian& h, double beta);

namespace detail {
/// Shared assembly of heats from located roots. `y` is the free-energy
/// level the roots solve for, `entropy_for_q` enters the entropy-difference
/// form at finite roots, `energy_for_cap` the sentinel/cap branches.
HeatBounds assemble_heat_bounds(const BetaRoots& roots, double y, double entropy_for_q,
                                double energy_for_cap, const Hamiltonian& h, double beta);
}  // namespace detail

/// Independent verification of the closed-form solution by direct search
/// over the convex problem: (a) a feasibility scan over the thermal family
/// on a grid log-dense near beta with bisection refinement of the
/// feasibility boundary, (b) rejection-sampled random density matrices that
/// must never beat the tier-(a) extrema.
struct OracleBounds {
    double q_c = 0.0;
    double q_h = 0.0;
    double tier_b_q_c = 0.0;   // extrema over feasible random states
    double tier_b_q_h = 0.0;
    int feasible_samples = 0;
};

OracleBounds heat_bounds_oracle(const DensityMatrix& rho, const Hamiltonian& h, double beta,
                                int grid_resolution = 2000, int random_samples = 200,
                                std::uint64_t seed = 1);

/// Closed forms for N parties with identical d-level ladder Hamiltonians:
/// objective N * [d/(e^{d bt} - 1) - 1/(e^{bt} - 1)] + E and the matching
/// constraint expression (<= 0 on the feasible set). The bt -> 0 limit is
/// evaluated by series.
struct HOPoint {
    double objective;
    double constraint;
};

HOPoint ho_constraint_objective(double beta_tilde, const ScalarProblem& problem, int n_parties,
                                int d);

/// Closed-form magnitude of the inversion parameter of the left root for
/// the bipartite ladder problem with maximally mixed marginals, valid for
/// large beta: 6 log d / (beta (d^2 - 1)).
double beta_c_asymptotic(int d, double beta);

}  // namespace thermowit
