#include "thermowit/heat_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "thermowit/errors.hpp"
#include "thermowit/random.hpp"

namespace thermowit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double root_tol(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

void validate_problem(const ScalarProblem& p, const Hamiltonian& h) {
    if (p.beta <= 0.0) throw ValidationError("heat bounds: beta must be > 0");
    if (!std::isfinite(p.energy) || !std::isfinite(p.entropy))
        throw ValidationError("heat bounds: energy and entropy must be finite");
    const double tol = 1e-9 * std::max(1.0, h.spectral_range());
    if (p.entropy < -tol || p.entropy > std::log(static_cast<double>(h.dim())) + tol)
        throw ValidationError("heat bounds: entropy outside [0, log dim]");
    if (p.energy < h.ground_energy() - tol || p.energy > h.top_energy() + tol)
        throw ValidationError("heat bounds: energy outside the spectral range");
}

// Expand outward from beta in direction dir (+1/-1) until f changes sign,
// then bisect. Returns nullopt when no sign change occurs within |x| = x_max.
std::optional<double> bracket_and_bisect(double y, const Hamiltonian& h, double beta,
                                         int dir, double x_max) {
    auto f = [&](double x) { return y - gibbs_free_energy(h, x, beta); };

    const double bound = dir > 0 ? x_max : -x_max;
    double near = beta;
    double step = 1e-6 * std::max(1.0, std::abs(beta));
    double far = 0.0;
    bool bracketed = false;
    for (int it = 0; it < 200; ++it) {
        far = beta + dir * step;
        if (dir > 0 ? far >= bound : far <= bound) {
            far = bound;
            bracketed = f(far) < 0.0;
            break;
        }
        if (f(far) < 0.0) {
            bracketed = true;
            break;
        }
        near = far;
        step *= 2.0;
    }
    if (!bracketed) return std::nullopt;

    // Invariant: f(near) >= 0 > f(far).
    for (int it = 0; it < 200 && std::abs(far - near) > root_tol(0.5 * (near + far)); ++it) {
        const double mid = 0.5 * (near + far);
        (f(mid) >= 0.0 ? near : far) = mid;
    }
    return 0.5 * (near + far);
}

}  // namespace

double f_function(double x, double y, const Hamiltonian& h, double beta) {
    if (beta <= 0.0) throw ValidationError("f_function: beta must be > 0");
    if (!std::isfinite(x)) throw ValidationError("f_function: x must be finite");
    return y - gibbs_free_energy(h, x, beta);
}

BetaRoots find_beta_roots(const ScalarProblem& p, const Hamiltonian& h) {
    validate_problem(p, h);
    const double beta = p.beta;
    const double y = p.energy - p.entropy / beta;
    const double y_min = gibbs_free_energy(h, beta, beta);

    if (y < y_min - 1e-9) throw InfeasibleError("find_beta_roots: free energy below the Gibbs value");

    BetaRoots roots;
    if (y - y_min <= 1e-13 * std::max(1.0, std::abs(y_min))) {
        roots.beta_c = beta;
        roots.beta_h = beta;
        roots.degenerate = true;
        return roots;
    }

    const double range = h.spectral_range();
    const double x_max = range > 0.0 ? 1e4 / range : 0.0;

    // Analytic x -> +/-infinity limits of F_beta(gamma(x)), multiplicity-aware.
    const double f_plus = h.ground_energy() - std::log(static_cast<double>(h.ground_multiplicity())) / beta;
    const double f_minus = h.top_energy() - std::log(static_cast<double>(h.top_multiplicity())) / beta;

    if (y >= f_plus - 1e-12 * std::max(1.0, std::abs(f_plus))) {
        roots.beta_h = std::nullopt;  // heating branch capped
    } else {
        roots.beta_h = bracket_and_bisect(y, h, beta, +1, x_max);
    }

    if (y >= f_minus - 1e-12 * std::max(1.0, std::abs(f_minus))) {
        roots.beta_c = -kInf;
    } else {
        const auto left = bracket_and_bisect(y, h, beta, -1, x_max);
        roots.beta_c = left ? *left : -kInf;
    }
    return roots;
}

namespace detail {

HeatBounds assemble_heat_bounds(const BetaRoots& roots, double y, double entropy_for_q,
                                double energy_for_cap, const Hamiltonian& h, double beta) {
    HeatBounds out;
    out.degenerate = roots.degenerate;
    if (roots.degenerate) {
        out.beta_c = beta;
        out.beta_h = beta;
        out.q_c = out.q_h = (entropy_for_q - gibbs_entropy(h, beta)) / beta;
        return out;
    }

    out.beta_c = roots.beta_c;
    out.beta_h = roots.beta_h;

    const double range = h.spectral_range();
    const double x_max = range > 0.0 ? 1e4 / range : 0.0;

    if (roots.beta_c_is_sentinel()) {
        const double f_minus =
            h.top_energy() - std::log(static_cast<double>(h.top_multiplicity())) / beta;
        const double lim_tol = 1e-12 * std::max(1.0, std::abs(f_minus));
        if (y > f_minus + lim_tol) {
            // Constraint slack everywhere on the left: the exact optimum is
            // the top-eigenspace limit.
            out.q_c = energy_for_cap - h.top_energy();
        } else if (y >= f_minus - lim_tol) {
            // At the limit boundary the entropy form equals the energy form.
            out.q_c = (entropy_for_q - std::log(static_cast<double>(h.top_multiplicity()))) / beta;
        } else {
            // Root beyond the cutoff: evaluate at the cutoff itself.
            out.q_c = energy_for_cap - gibbs_energy(h, -x_max);
        }
    } else {
        out.q_c = (entropy_for_q - gibbs_entropy(h, roots.beta_c)) / beta;
    }

    if (roots.beta_h) {
        out.q_h = (entropy_for_q - gibbs_entropy(h, *roots.beta_h)) / beta;
    } else {
        out.h_capped = true;
        const double f_plus =
            h.ground_energy() - std::log(static_cast<double>(h.ground_multiplicity())) / beta;
        if (y >= f_plus - 1e-12 * std::max(1.0, std::abs(f_plus)))
            out.q_h = energy_for_cap - h.ground_energy();
        else
            out.q_h = energy_for_cap - gibbs_energy(h, x_max);
    }
    return out;
}

}  // namespace detail

HeatBounds heat_bounds_scalar(const ScalarProblem& p, const Hamiltonian& h) {
    const BetaRoots roots = find_beta_roots(p, h);
    const double y = p.energy - p.entropy / p.beta;
    return detail::assemble_heat_bounds(roots, y, p.entropy, p.energy, h, p.beta);
}

HeatBounds heat_bounds(const DensityMatrix& rho, const Hamiltonian& h, double beta) {
    return heat_bounds_scalar(
        ScalarProblem{average_energy(rho, h), von_neumann_entropy(rho), beta}, h);
}

OracleBounds heat_bounds_oracle(const DensityMatrix& rho, const Hamiltonian& h, double beta,
                                int grid_resolution, int random_samples, std::uint64_t seed) {
    if (grid_resolution < 1000)
        throw ValidationError("heat_bounds_oracle: grid resolution must be >= 1000");
    if (beta <= 0.0) throw ValidationError("heat_bounds_oracle: beta must be > 0");

    const double e_rho = average_energy(rho, h);
    const double y = free_energy(rho, h, beta);

    // Self-contained thermal-family evaluator (kept separate from the
    // root-finder path on purpose).
    const RealVector& eps = h.spectrum();
    const int d = static_cast<int>(eps.size());
    auto thermal = [&](double x, double& energy, double& fre) {
        double m = -kInf;
        for (int i = 0; i < d; ++i) m = std::max(m, -x * eps(i));
        double z = 0.0;
        std::vector<double> w(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            w[static_cast<std::size_t>(i)] = std::exp(-x * eps(i) - m);
            z += w[static_cast<std::size_t>(i)];
        }
        energy = 0.0;
        double entropy = 0.0;
        for (int i = 0; i < d; ++i) {
            const double p = w[static_cast<std::size_t>(i)] / z;
            energy += p * eps(i);
            if (p > 0.0) entropy -= p * std::log(p);
        }
        fre = energy - entropy / beta;
    };
    auto feasible = [&](double x) {
        double energy, fre;
        thermal(x, energy, fre);
        return fre <= y + 1e-12;
    };
    auto objective = [&](double x) {
        double energy, fre;
        thermal(x, energy, fre);
        return e_rho - energy;
    };

    const double range = h.spectral_range();
    const double x_max = range > 0.0 ? 1e4 / range : 1.0;

    // Grid symmetric in [-x_max, x_max], log-dense near beta.
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(grid_resolution));
    const double shape = 14.0;
    const double denom = std::expm1(shape);
    for (int i = 0; i < grid_resolution; ++i) {
        const double u = -1.0 + 2.0 * static_cast<double>(i) / (grid_resolution - 1);
        const double span = u >= 0.0 ? (x_max - beta) : (x_max + beta);
        const double t = std::expm1(shape * std::abs(u)) / denom;
        grid.push_back(beta + (u >= 0.0 ? t : -t) * span);
    }

    OracleBounds out;
    double q_min = kInf, q_max = -kInf;
    std::vector<char> feas(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        feas[i] = feasible(grid[i]) ? 1 : 0;
        if (feas[i]) {
            const double g = objective(grid[i]);
            q_min = std::min(q_min, g);
            q_max = std::max(q_max, g);
        }
    }
    if (!std::isfinite(q_min))
        throw SolverError("heat_bounds_oracle: no feasible grid point (infeasible problem?)");

    // Refine every feasibility boundary; the objective is monotone in x, so
    // the extrema sit exactly on those boundaries.
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (feas[i] == feas[i + 1]) continue;
        double in = feas[i] ? grid[i] : grid[i + 1];
        double outp = feas[i] ? grid[i + 1] : grid[i];
        for (int it = 0; it < 200 && std::abs(outp - in) > 1e-13 * std::max(1.0, std::abs(in)); ++it) {
            const double mid = 0.5 * (in + outp);
            (feasible(mid) ? in : outp) = mid;
        }
        const double g = objective(in);
        q_min = std::min(q_min, g);
        q_max = std::max(q_max, g);
    }
    // The x -> +/-infinity closure points of the thermal family (maximally
    // mixed on the extremal multiplicity spaces) are candidates too.
    {
        const double f_plus =
            h.ground_energy() - std::log(static_cast<double>(h.ground_multiplicity())) / beta;
        if (f_plus <= y + 1e-12) {
            q_min = std::min(q_min, e_rho - h.ground_energy());
            q_max = std::max(q_max, e_rho - h.ground_energy());
        }
        const double f_minus =
            h.top_energy() - std::log(static_cast<double>(h.top_multiplicity())) / beta;
        if (f_minus <= y + 1e-12) {
            q_min = std::min(q_min, e_rho - h.top_energy());
            q_max = std::max(q_max, e_rho - h.top_energy());
        }
    }
    out.q_c = q_min;
    out.q_h = q_max;

    // Tier (b): random feasible states must not beat the thermal family.
    Rng rng(seed);
    double b_min = kInf, b_max = -kInf;
    for (int s = 0; s < random_samples; ++s) {
        const DensityMatrix eta = random_density_matrix(h.dim(), rng);
        if (free_energy(eta, h, beta) > y + 1e-12) continue;
        const double g = e_rho - average_energy(eta, h);
        b_min = std::min(b_min, g);
        b_max = std::max(b_max, g);
        ++out.feasible_samples;
    }
    out.tier_b_q_c = out.feasible_samples > 0 ? b_min : 0.0;
    out.tier_b_q_h = out.feasible_samples > 0 ? b_max : 0.0;
    return out;
}

namespace {

// d/(e^{d z} - 1) - 1/(e^z - 1), with the z -> 0 limit -(d-1)/2 by series.
double ladder_energy_gap(double z, int d) {
    if (std::abs(z) * d < 1e-5)
        return -(d - 1) / 2.0 + z * (static_cast<double>(d) * d - 1.0) / 12.0;
    return static_cast<double>(d) / std::expm1(static_cast<double>(d) * z) - 1.0 / std::expm1(z);
}

// log |e^z - 1|, stable for large |z|.
double log_abs_expm1(double z) {
    if (z > 30.0) return z + std::log1p(-std::exp(-z));
    if (z < -30.0) return std::log1p(-std::exp(z));
    return std::log(std::abs(std::expm1(z)));
}

// log[(e^z - 1)/(e^{d z} - 1)], with the z -> 0 limit -log d by series.
double log_partition_ratio(double z, int d) {
    if (std::abs(z) * d < 1e-5)
        return -std::log(static_cast<double>(d)) + z * (1.0 - d) / 2.0 +
               z * z * (1.0 - static_cast<double>(d) * d) / 24.0;
    return log_abs_expm1(z) - log_abs_expm1(static_cast<double>(d) * z);
}

}  // namespace

HOPoint ho_constraint_objective(double beta_tilde, const ScalarProblem& p, int n_parties, int d) {
    if (d < 2) throw ValidationError("ho_constraint_objective: d must be >= 2");
    if (n_parties < 1) throw ValidationError("ho_constraint_objective: n_parties must be >= 1");
    if (p.beta <= 0.0) throw ValidationError("ho_constraint_objective: beta must be > 0");

    const double n = static_cast<double>(n_parties);
    const double gap = n * ladder_energy_gap(beta_tilde, d);

    HOPoint out;
    out.objective = gap + p.energy;
    out.constraint = (beta_tilde - p.beta) * (gap + p.energy) - beta_tilde * p.energy +
                     n * (d - 1) * beta_tilde + n * log_partition_ratio(beta_tilde, d) + p.entropy;
    return out;
}

double beta_c_asymptotic(int d, double beta) {
    if (d < 2) throw ValidationError("beta_c_asymptotic: d must be >= 2");
    if (beta <= 0.0) throw ValidationError("beta_c_asymptotic: beta must be > 0");
    return 6.0 * std::log(static_cast<double>(d)) / (beta * (static_cast<double>(d) * d - 1.0));
}

}  // namespace thermowit
