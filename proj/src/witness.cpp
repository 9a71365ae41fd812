#include "thermowit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermowit/errors.hpp"

namespace thermowit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<LocalData> local_data(const DensityMatrix& rho, const std::vector<Hamiltonian>& locals) {
    if (locals.size() != rho.dims().size())
        throw ValidationError("local_data: one local Hamiltonian per subsystem required");
    std::vector<LocalData> out;
    out.reserve(locals.size());
    for (std::size_t k = 0; k < locals.size(); ++k) {
        const DensityMatrix marginal = partial_trace(rho, {static_cast<int>(k)});
        out.push_back({average_energy(marginal, locals[k]), von_neumann_entropy(marginal)});
    }
    return out;
}

SetBound sep_free_energy_bound(const std::vector<LocalData>& locals, double beta) {
    if (locals.size() < 2)
        throw ValidationError("sep_free_energy_bound: at least two subsystems required");
    if (beta <= 0.0) throw ValidationError("sep_free_energy_bound: beta must be > 0");
    double e_sum = 0.0;
    double s_max = -kInf;
    for (const LocalData& l : locals) {
        if (l.entropy < -1e-9)
            throw ValidationError("sep_free_energy_bound: negative local entropy");
        e_sum += l.energy;
        s_max = std::max(s_max, l.entropy);
    }
    s_max = std::max(s_max, 0.0);
    return SetBound{e_sum - s_max / beta, s_max, e_sum};
}

SetBound incoh_free_energy_bound(double energy, const Hamiltonian& h, double beta) {
    if (beta <= 0.0) throw ValidationError("incoh_free_energy_bound: beta must be > 0");
    const RealVector& eps = h.spectrum();
    const int d = static_cast<int>(eps.size());
    const double tol = 1e-9 * std::max(1.0, h.spectral_range());
    if (energy < eps(0) - tol || energy > eps(d - 1) + tol)
        throw ValidationError("incoh_free_energy_bound: energy outside the spectral range");
    const double e = std::clamp(energy, eps(0), eps(d - 1));

    double s_floor = kInf;
    for (int i = 0; i < d && s_floor > 0.0; ++i) {
        if (std::abs(e - eps(i)) <= tol) {
            s_floor = 0.0;
            break;
        }
        for (int j = i + 1; j < d; ++j) {
            if (eps(i) > e || eps(j) < e) continue;
            const double gap = eps(j) - eps(i);
            if (gap <= tol) continue;
            s_floor = std::min(s_floor, binary_entropy((e - eps(i)) / gap));
        }
    }
    if (!std::isfinite(s_floor))
        throw NumericalError("incoh_free_energy_bound: no bracketing level pair found");
    return SetBound{e - s_floor / beta, s_floor, e};
}

WitnessEnvelope witness_heat_bounds(const SetBound& bound, const Hamiltonian& h, double beta) {
    // The roots come from y = f_star; the synthesized energy keeps the
    // scalar problem consistent with (f_star, s_floor).
    const ScalarProblem p{bound.f_star + bound.s_floor / beta, bound.s_floor, beta};
    const BetaRoots roots = find_beta_roots(p, h);
    const HeatBounds hb =
        detail::assemble_heat_bounds(roots, bound.f_star, bound.s_floor, bound.e_cap, h, beta);

    WitnessEnvelope env;
    env.f_star = bound.f_star;
    env.s_floor = bound.s_floor;
    env.e_cap = bound.e_cap;
    env.degenerate = hb.degenerate;
    env.beta_star_c = hb.beta_c;
    env.beta_star_h = hb.beta_h;
    env.q_star_c = hb.q_c;
    env.q_star_h = hb.q_h;

    if (env.q_star_c > 1e-9 || env.q_star_h < -1e-9)
        throw NumericalError("witness_heat_bounds: envelope does not straddle zero");
    return env;
}

Verdict verdict(double q_measured, const WitnessEnvelope& envelope, double margin) {
    if (margin < 0.0) throw ValidationError("verdict: margin must be >= 0");
    if (q_measured < envelope.q_star_c - margin) return Verdict::DetectedLow;
    if (q_measured > envelope.q_star_h + margin) return Verdict::DetectedHigh;
    return Verdict::Inside;
}

bool detects(const HeatBounds& measured, const WitnessEnvelope& envelope, double margin) {
    return verdict(measured.q_c, envelope, margin) != Verdict::Inside ||
           verdict(measured.q_h, envelope, margin) != Verdict::Inside;
}

DensityMatrix isotropic_state(int d, double lambda) {
    if (d < 2) throw ValidationError("isotropic_state: d must be >= 2");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw ValidationError("isotropic_state: lambda must lie in [0, 1]");
    const int dd = d * d;
    Matrix rho = Matrix::Identity(dd, dd) * (lambda / dd);
    const double amp = (1.0 - lambda) / d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) += amp;
    return DensityMatrix(std::move(rho), Dims{d, d});
}

DensityMatrix werner_state(double lambda) { return isotropic_state(2, lambda); }

RealVector isotropic_spectrum(int d, double lambda) {
    const int dd = d * d;
    RealVector spec(dd);
    for (int i = 0; i < dd - 1; ++i) spec(i) = lambda / dd;
    spec(dd - 1) = 1.0 - lambda + lambda / dd;
    return spec;
}

namespace {
// S(rho_AB(lambda)) - log d from the closed-form spectrum.
double isotropic_entropy_gap(int d, double lambda) {
    const int dd = d * d;
    const double a = 1.0 - lambda + lambda / dd;
    const double b = lambda / dd;
    double s = 0.0;
    if (a > 0.0) s -= a * std::log(a);
    if (b > 0.0) s -= (dd - 1) * b * std::log(b);
    return s - std::log(static_cast<double>(d));
}
}  // namespace

double lambda_crt(int d) {
    if (d < 2) throw ValidationError("lambda_crt: d must be >= 2");

    // Uniqueness scan: the gap must change sign exactly once on (0, 1).
    int crossings = 0;
    double prev = isotropic_entropy_gap(d, 1e-9);
    for (int i = 1; i <= 512; ++i) {
        const double lam = static_cast<double>(i) / 512.0 * (1.0 - 2e-9) + 1e-9;
        const double cur = isotropic_entropy_gap(d, lam);
        if ((prev < 0.0) != (cur < 0.0)) ++crossings;
        prev = cur;
    }
    if (crossings != 1)
        throw SolverError("lambda_crt: entropy gap does not cross zero exactly once");

    double lo = 0.0, hi = 1.0;  // gap(0) = -log d < 0 < log d = gap(1)
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (isotropic_entropy_gap(d, mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace thermowit
