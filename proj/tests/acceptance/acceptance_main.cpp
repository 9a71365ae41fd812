// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "thermowit/experiments.hpp"
#include "thermowit/io.hpp"
#include "thermowit/random.hpp"

using namespace thermowit;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.str().empty()) detail << "; ";
            detail << what;
        }
    }
};

std::string fmt(double v) { return fmt_g15(v); }

// ---- criterion 1 ---------------------------------------------------------
void gibbs_null_test(Check& c) {
    const Hamiltonian h = ladder_hamiltonian(3);
    for (double beta : {0.3, 1.0, 3.0}) {
        const HeatBounds hb = heat_bounds(gibbs_state(h, beta), h, beta);
        c.require(std::abs(hb.q_c) <= 1e-8, "q_c=" + fmt(hb.q_c) + " at beta=" + fmt(beta));
        c.require(std::abs(hb.q_h) <= 1e-8, "q_h=" + fmt(hb.q_h) + " at beta=" + fmt(beta));
    }
}

// shared sample set for criteria 2, 3 and 11
struct Sample {
    Hamiltonian h;
    DensityMatrix rho;
};

std::vector<Sample> oracle_samples(int dim) {
    std::vector<Sample> out;
    for (int k = 0; k < 100; ++k) {
        Rng rng(static_cast<std::uint64_t>(dim) * 100000 + k);
        RealVector eps(dim);
        for (int i = 0; i < dim; ++i) eps(i) = 2.0 * rng.uniform();
        std::sort(eps.data(), eps.data() + dim);
        Matrix hm = Matrix::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) hm(i, i) = eps(i);
        out.push_back(Sample{Hamiltonian(hm, {dim}), random_density_matrix(dim, rng)});
    }
    return out;
}

std::string oracle_suite_csv() {
    std::ostringstream csv;
    csv << "dim,seed,q_c,q_h,oracle_q_c,oracle_q_h\n";
    for (int dim : {2, 3, 4}) {
        const auto samples = oracle_samples(dim);
        for (int k = 0; k < 100; ++k) {
            const Sample& s = samples[static_cast<std::size_t>(k)];
            const HeatBounds hb = heat_bounds(s.rho, s.h, 1.0);
            const OracleBounds ob = heat_bounds_oracle(s.rho, s.h, 1.0, 2000, 200, 77 + k);
            csv << dim << "," << k << "," << fmt(hb.q_c) << "," << fmt(hb.q_h) << ","
                << fmt(ob.q_c) << "," << fmt(ob.q_h) << "\n";
        }
    }
    return csv.str();
}

// ---- criterion 2 ---------------------------------------------------------
void oracle_equivalence(Check& c) {
    for (int dim : {2, 3, 4}) {
        const auto samples = oracle_samples(dim);
        for (int k = 0; k < 100; ++k) {
            const Sample& s = samples[static_cast<std::size_t>(k)];
            const HeatBounds hb = heat_bounds(s.rho, s.h, 1.0);
            const OracleBounds ob = heat_bounds_oracle(s.rho, s.h, 1.0, 2000, 200, 77 + k);
            c.require(std::abs(hb.q_c - ob.q_c) <= 1e-6,
                      "dim=" + std::to_string(dim) + " k=" + std::to_string(k) +
                          " dq_c=" + fmt(hb.q_c - ob.q_c));
            c.require(std::abs(hb.q_h - ob.q_h) <= 1e-6,
                      "dim=" + std::to_string(dim) + " k=" + std::to_string(k) +
                          " dq_h=" + fmt(hb.q_h - ob.q_h));
            c.require(ob.tier_b_q_c >= ob.q_c - 1e-6 && ob.tier_b_q_h <= ob.q_h + 1e-6,
                      "tier-b beats the thermal family at dim=" + std::to_string(dim) +
                          " k=" + std::to_string(k));
            if (!c.ok) return;
        }
    }
}

// ---- criterion 3 ---------------------------------------------------------
void root_consistency(Check& c) {
    for (int dim : {2, 3, 4}) {
        const auto samples = oracle_samples(dim);
        for (const Sample& s : samples) {
            const double energy = average_energy(s.rho, s.h);
            const double entropy = von_neumann_entropy(s.rho);
            const HeatBounds hb = heat_bounds(s.rho, s.h, 1.0);
            if (std::isfinite(hb.beta_c)) {
                const double lhs = energy - gibbs_energy(s.h, hb.beta_c);
                const double rhs = entropy - gibbs_entropy(s.h, hb.beta_c);
                c.require(std::abs(lhs - rhs) <= 1e-8, "left root mismatch " + fmt(lhs - rhs));
            }
            if (hb.beta_h) {
                const double lhs = energy - gibbs_energy(s.h, *hb.beta_h);
                const double rhs = entropy - gibbs_entropy(s.h, *hb.beta_h);
                c.require(std::abs(lhs - rhs) <= 1e-8, "right root mismatch " + fmt(lhs - rhs));
            }
            if (!c.ok) return;
        }
    }
}

// ---- criterion 4 ---------------------------------------------------------
void lambda_crt_checks(Check& c) {
    const double l2 = lambda_crt(2);
    c.require(l2 >= 0.247 && l2 <= 0.258, "lambda_crt(2)=" + fmt(l2));

    double prev = 0.0;
    for (int d = 2; d <= 7; ++d) {
        const double lc = lambda_crt(d);
        c.require(lc > prev, "not increasing at d=" + std::to_string(d));
        prev = lc;

        const double dd = static_cast<double>(d) * d;
        const double lhs = (lc - dd * lc) * std::log(lc / dd) +
                           (dd * (lc - 1.0) - lc) * std::log((1.0 / dd - 1.0) * lc + 1.0);
        const double rhs = dd * std::log(static_cast<double>(d));
        c.require(std::abs(lhs - rhs) <= 1e-8,
                  "transcendental residual " + fmt(lhs - rhs) + " at d=" + std::to_string(d));

        const double gap =
            von_neumann_entropy(isotropic_state(d, lc)) - std::log(static_cast<double>(d));
        c.require(std::abs(gap) <= 1e-8, "entropy residual " + fmt(gap) + " at d=" + std::to_string(d));
    }
}

// ---- criterion 5 ---------------------------------------------------------
void detection_sweep(Check& c) {
    const int steps = 400;
    const WernerSweep sweep = werner_sweep(2, 0.5, steps);
    const double threshold = lambda_crt(2);
    const double cell = 1.0 / (steps - 1);

    c.require(std::abs(sweep.rows.front().q_h - 1.0) <= 1e-12,
              "q_h(0)=" + fmt(sweep.rows.front().q_h));
    for (const WernerRow& r : sweep.rows) {
        const bool expected = r.lambda < threshold;
        if (r.detected != expected && std::abs(r.lambda - threshold) > cell)
            c.require(false, "detection mismatch at lambda=" + fmt(r.lambda));
    }
}

// ---- criterion 6 ---------------------------------------------------------
void witness_soundness(Check& c) {
    const Hamiltonian local2 = ladder_hamiltonian(2);
    const Hamiltonian total2 = local_sum_hamiltonian(local2, 2);
    for (double beta : {0.5, 1.0}) {
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const DensityMatrix rho = random_separable_state({2, 2}, 4, 10000 + seed);
            const auto locals = local_data(rho, {local2, local2});
            const WitnessEnvelope env =
                witness_heat_bounds(sep_free_energy_bound(locals, beta), total2, beta);
            const HeatBounds hb = heat_bounds(rho, total2, beta);
            c.require(hb.q_c >= env.q_star_c - 1e-7 && hb.q_h <= env.q_star_h + 1e-7,
                      "separable escape at seed=" + std::to_string(seed) + " beta=" + fmt(beta));
            if (!c.ok) return;
        }
    }

    const Hamiltonian h3 = ladder_hamiltonian(3);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DensityMatrix rho = random_incoherent_state(3, 20000 + seed);
        const double e = average_energy(rho, h3);
        const WitnessEnvelope env =
            witness_heat_bounds(incoh_free_energy_bound(e, h3, 1.0), h3, 1.0);
        const HeatBounds hb = heat_bounds(rho, h3, 1.0);
        c.require(hb.q_c >= env.q_star_c - 1e-7 && hb.q_h <= env.q_star_h + 1e-7,
                  "incoherent escape at seed=" + std::to_string(seed));
        if (!c.ok) return;
    }
}

// ---- criterion 7 ---------------------------------------------------------
void pure_entangled_detection(Check& c) {
    for (int d : {2, 3}) {
        const Hamiltonian local = ladder_hamiltonian(d);
        const Hamiltonian total = local_sum_hamiltonian(local, 2);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const DensityMatrix psi = random_pure_state(Dims{d, d}, 30000 + seed);
            c.require(conditional_entropy(psi, {0}, {1}) < 0.0,
                      "conditional entropy not negative at d=" + std::to_string(d) +
                          " seed=" + std::to_string(seed));
            const auto locals = local_data(psi, {local, local});
            const WitnessEnvelope env =
                witness_heat_bounds(sep_free_energy_bound(locals, 1.0), total, 1.0);
            c.require(detects(heat_bounds(psi, total, 1.0), env),
                      "undetected pure state at d=" + std::to_string(d) +
                          " seed=" + std::to_string(seed));
            if (!c.ok) return;
        }
    }
}

// ---- criterion 8 ---------------------------------------------------------
void asymptotic_agreement(Check& c) {
    const auto rows = asymptotic_rows({2, 3, 4, 5}, {10.0, 20.0, 50.0}, std::nullopt);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        c.require(r.rel_err <= 0.10, "rel_err=" + fmt(r.rel_err) + " at d=" + std::to_string(r.d) +
                                         " beta=" + fmt(r.beta));
        if (i % 3 != 0) {
            c.require(rows[i].rel_err <= rows[i - 1].rel_err + 1e-12,
                      "rel_err not nonincreasing at d=" + std::to_string(r.d) +
                          " beta=" + fmt(r.beta));
        }
    }
}

// ---- criterion 9 ---------------------------------------------------------
void tavis_cummings_run(Check& c) {
    TCRunConfig cfg;  // epsilon = g = 1, beta = 0.3, tau = pi/4, n_max = 8, 200 steps
    const TCTrajectory traj = tc_run(cfg);

    c.require(traj.fixed_point.residual <= 1e-10,
              "fixed-point residual=" + fmt(traj.fixed_point.residual));
    c.require(traj.final_delta <= 1e-8, "delta(tau)=" + fmt(traj.final_delta));
    c.require(traj.max_q > 0.0, "max_q=" + fmt(traj.max_q));
    for (double drift : traj.energy_drift)
        if (std::abs(drift) > 1e-9) {
            c.require(false, "energy drift " + fmt(drift));
            break;
        }
    c.require(traj.max_leakage <= 1e-6, "leakage=" + fmt(traj.max_leakage));

    TCRunConfig doubled = cfg;
    doubled.n_max = 16;
    const TCTrajectory traj16 = tc_run(doubled);
    double sup = 0.0;
    for (std::size_t i = 0; i < traj.q.size(); ++i)
        sup = std::max(sup, std::abs(traj.q[i] - traj16.q[i]));
    c.require(sup < 1e-8, "n_max doubling changes Q by " + fmt(sup));
}

// ---- criterion 10 --------------------------------------------------------
void incoherent_control_run(Check& c) {
    TCRunConfig cfg;
    cfg.incoherent_control = true;
    const TCTrajectory traj = tc_run(cfg);
    c.require(std::abs(traj.q.back()) <= 1e-6, "control Q(tau)=" + fmt(traj.q.back()));

    const TCModel model = build_tc_model(cfg.epsilon, cfg.g, cfg.n_max, cfg.beta);
    const double e_s = average_energy(gibbs_state(model.h_spin, cfg.beta), model.h_spin);
    const WitnessEnvelope env = witness_heat_bounds(
        incoh_free_energy_bound(e_s, model.h_spin, cfg.beta), model.h_spin, cfg.beta);
    c.require(std::abs(env.q_star_c) <= 1e-9 && std::abs(env.q_star_h) <= 1e-9,
              "incoherent envelope not zero");
    c.require(verdict(traj.q.back(), env) == Verdict::Inside, "control escapes the envelope");
}

// ---- criterion 11 --------------------------------------------------------
void determinism(Check& c) {
    c.require(oracle_suite_csv() == oracle_suite_csv(), "oracle suite CSV differs across reruns");

    const std::string w1 = werner_sweep_csv(werner_sweep(2, 0.5, 400), 2, 0.5, 400);
    const std::string w2 = werner_sweep_csv(werner_sweep(2, 0.5, 400), 2, 0.5, 400);
    c.require(w1 == w2, "werner sweep CSV differs across reruns");

    TCRunConfig cfg;
    const std::string t1 = tc_csv(tc_run(cfg), cfg);
    const std::string t2 = tc_csv(tc_run(cfg), cfg);
    c.require(t1 == t2, "tavis-cummings CSV differs across reruns");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "gibbs-null", gibbs_null_test},
        {2, "oracle-equivalence", oracle_equivalence},
        {3, "root-consistency", root_consistency},
        {4, "lambda-crt", lambda_crt_checks},
        {5, "detection-sweep", detection_sweep},
        {6, "witness-soundness", witness_soundness},
        {7, "pure-entangled-detection", pure_entangled_detection},
        {8, "asymptotic-beta-c", asymptotic_agreement},
        {9, "tavis-cummings", tavis_cummings_run},
        {10, "incoherent-control", incoherent_control_run},
        {11, "determinism", determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %02d %-26s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", criterion.id,
                    criterion.name, secs, c.ok ? "" : " -- ", c.detail.str().c_str());
        std::fflush(stdout);
        if (!c.ok) ++failures;
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
