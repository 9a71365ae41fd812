#include "thermowit/experiments.hpp"

#include <cmath>
#include <sstream>

#include "thermowit/errors.hpp"
#include "thermowit/io.hpp"
#include "thermowit/threads.hpp"

namespace thermowit {

namespace {

std::string bool_name(bool b) { return b ? "true" : "false"; }

void append_field(std::ostringstream& out, const char* key, const std::string& value, bool& first) {
    if (!first) out << ",";
    out << "\"" << key << "\":" << value;
    first = false;
}

}  // namespace

std::string bounds_record_json(const DensityMatrix& rho, const Hamiltonian& h, double beta) {
    const double energy = average_energy(rho, h);
    const double entropy = von_neumann_entropy(rho);
    const HeatBounds hb = heat_bounds_scalar(ScalarProblem{energy, entropy, beta}, h);

    std::ostringstream out;
    bool first = true;
    out << "{";
    append_field(out, "beta_c",
                 std::isfinite(hb.beta_c) ? fmt_g15(hb.beta_c) : std::string("\"-inf\""), first);
    append_field(out, "beta_h", hb.beta_h ? fmt_g15(*hb.beta_h) : std::string("null"), first);
    append_field(out, "q_c", fmt_g15(hb.q_c), first);
    append_field(out, "q_h", fmt_g15(hb.q_h), first);
    append_field(out, "h_capped", bool_name(hb.h_capped), first);
    append_field(out, "degenerate", bool_name(hb.degenerate), first);
    append_field(out, "E", fmt_g15(energy), first);
    append_field(out, "S", fmt_g15(entropy), first);
    append_field(out, "F", fmt_g15(energy - entropy / beta), first);
    out << "}\n";
    return out.str();
}

WernerSweep werner_sweep(int d, double beta, int lambda_steps, double margin) {
    if (d < 2 || d > 7) throw ValidationError("werner_sweep: d must lie in [2, 7]");
    if (lambda_steps < 2) throw ValidationError("werner_sweep: lambda_steps must be >= 2");
    if (beta <= 0.0) throw ValidationError("werner_sweep: beta must be > 0");

    const Hamiltonian h_total = local_sum_hamiltonian(ladder_hamiltonian(d), 2);
    const std::vector<LocalData> locals(2, LocalData{(d - 1) / 2.0, std::log(static_cast<double>(d))});
    const WitnessEnvelope env = witness_heat_bounds(sep_free_energy_bound(locals, beta), h_total, beta);

    WernerSweep sweep;
    sweep.envelope = env;
    sweep.rows.resize(static_cast<std::size_t>(lambda_steps));
    parallel_for(lambda_steps, [&](int i) {
        const double lambda = static_cast<double>(i) / (lambda_steps - 1);
        const HeatBounds hb = heat_bounds(isotropic_state(d, lambda), h_total, beta);
        sweep.rows[static_cast<std::size_t>(i)] =
            WernerRow{lambda, hb.q_c, hb.q_h, env.q_star_c, env.q_star_h, detects(hb, env, margin)};
    });
    return sweep;
}

std::string werner_sweep_csv(const WernerSweep& sweep, int d, double beta, int lambda_steps) {
    std::ostringstream params;
    params << "beta=" << fmt_g15(beta) << " d=" << d << " lambda_steps=" << lambda_steps;
    std::ostringstream out;
    out << csv_provenance("werner-sweep", params.str());
    out << "lambda,q_c,q_h,q_star_c,q_star_h,detected\n";
    for (const WernerRow& r : sweep.rows)
        out << fmt_g15(r.lambda) << "," << fmt_g15(r.q_c) << "," << fmt_g15(r.q_h) << ","
            << fmt_g15(r.q_star_c) << "," << fmt_g15(r.q_star_h) << "," << bool_name(r.detected)
            << "\n";
    return out.str();
}

std::string lambda_crt_csv(int d_max) {
    if (d_max < 2 || d_max > 12) throw ValidationError("lambda_crt_csv: d_max must lie in [2, 12]");
    std::ostringstream params;
    params << "d_max=" << d_max;
    std::ostringstream out;
    out << csv_provenance("lambda-crt", params.str());
    out << "d,lambda_crt\n";
    for (int d = 2; d <= d_max; ++d) out << d << "," << fmt_g15(lambda_crt(d)) << "\n";
    return out.str();
}

std::vector<AsymptoticRow> asymptotic_rows(const std::vector<int>& d_list,
                                           const std::vector<double>& beta_list,
                                           std::optional<double> entropy_override) {
    if (d_list.empty() || beta_list.empty())
        throw ValidationError("asymptotic_rows: d and beta lists must be nonempty");
    std::vector<AsymptoticRow> rows;
    for (int d : d_list) {
        if (d < 2 || d > 12) throw ValidationError("asymptotic_rows: d must lie in [2, 12]");
        const Hamiltonian h = local_sum_hamiltonian(ladder_hamiltonian(d), 2);
        for (double beta : beta_list) {
            if (beta <= 0.0) throw ValidationError("asymptotic_rows: beta must be > 0");
            const double entropy =
                entropy_override ? *entropy_override : std::log(static_cast<double>(d));
            const BetaRoots roots =
                find_beta_roots(ScalarProblem{static_cast<double>(d - 1), entropy, beta}, h);
            if (roots.beta_c_is_sentinel())
                throw SolverError("asymptotic_rows: left root beyond the numerical cutoff");
            const double asym = beta_c_asymptotic(d, beta);
            rows.push_back(AsymptoticRow{d, beta, std::abs(roots.beta_c), asym,
                                         std::abs(std::abs(roots.beta_c) - asym) / asym});
        }
    }
    return rows;
}

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows,
                           std::optional<double> entropy_override) {
    std::ostringstream params;
    params << "S=" << (entropy_override ? fmt_g15(*entropy_override) : std::string("log_d"));
    std::ostringstream out;
    out << csv_provenance("asymptotic", params.str());
    out << "d,beta,beta_c_numeric_magnitude,beta_c_asymptotic,rel_err\n";
    for (const AsymptoticRow& r : rows)
        out << r.d << "," << fmt_g15(r.beta) << "," << fmt_g15(r.numeric_magnitude) << ","
            << fmt_g15(r.asymptotic) << "," << fmt_g15(r.rel_err) << "\n";
    return out.str();
}

TCTrajectory tc_run(const TCRunConfig& cfg) {
    const TCModel model = build_tc_model(cfg.epsilon, cfg.g, cfg.n_max, cfg.beta);
    const DensityMatrix input = cfg.incoherent_control ? gibbs_state(model.h_spin, cfg.beta)
                                                       : coherent_input_state(cfg.beta, cfg.epsilon);
    return run_trajectory(model, input, cfg.tau, cfg.steps, cfg.leakage_threshold);
}

std::string tc_csv(const TCTrajectory& traj, const TCRunConfig& cfg) {
    std::ostringstream params;
    params << "beta=" << fmt_g15(cfg.beta) << " control=" << (cfg.incoherent_control ? "incoherent" : "none")
           << " epsilon=" << fmt_g15(cfg.epsilon) << " g=" << fmt_g15(cfg.g)
           << " n_max=" << cfg.n_max << " steps=" << cfg.steps << " tau=" << fmt_g15(cfg.tau);
    std::ostringstream out;
    out << csv_provenance("tavis-cummings", params.str());
    out << "t,q,delta,energy_drift,leakage\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        out << fmt_g15(traj.times[i]) << "," << fmt_g15(traj.q[i]) << "," << fmt_g15(traj.delta[i])
            << "," << fmt_g15(traj.energy_drift[i]) << "," << fmt_g15(traj.leakage[i]) << "\n";
    return out.str();
}

std::string tc_summary_json(const TCTrajectory& traj) {
    std::ostringstream out;
    bool first = true;
    out << "{";
    append_field(out, "max_q", fmt_g15(traj.max_q), first);
    append_field(out, "final_delta", fmt_g15(traj.final_delta), first);
    append_field(out, "fixed_point_residual", fmt_g15(traj.fixed_point.residual), first);
    append_field(out, "fixed_point_iterations", std::to_string(traj.fixed_point.iterations), first);
    append_field(out, "spectral_fallback", bool_name(traj.fixed_point.spectral_fallback), first);
    append_field(out, "max_leakage", fmt_g15(traj.max_leakage), first);
    out << "}\n";
    return out.str();
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Inside: return "inside";
        case Verdict::DetectedLow: return "detected-low";
        case Verdict::DetectedHigh: return "detected-high";
    }
    return "inside";
}

std::string witness_json(const std::string& kind, const WitnessEnvelope& env,
                         std::optional<double> q_measured, double margin) {
    std::ostringstream out;
    bool first = true;
    out << "{";
    append_field(out, "kind", "\"" + kind + "\"", first);
    append_field(out, "f_star", fmt_g15(env.f_star), first);
    append_field(out, "s_floor", fmt_g15(env.s_floor), first);
    append_field(out, "e_cap", fmt_g15(env.e_cap), first);
    append_field(out, "beta_star_c",
                 std::isfinite(env.beta_star_c) ? fmt_g15(env.beta_star_c) : std::string("\"-inf\""),
                 first);
    append_field(out, "beta_star_h",
                 env.beta_star_h ? fmt_g15(*env.beta_star_h) : std::string("null"), first);
    append_field(out, "q_star_c", fmt_g15(env.q_star_c), first);
    append_field(out, "q_star_h", fmt_g15(env.q_star_h), first);
    if (q_measured) {
        append_field(out, "q", fmt_g15(*q_measured), first);
        append_field(out, "verdict", "\"" + verdict_name(verdict(*q_measured, env, margin)) + "\"",
                     first);
    }
    out << "}\n";
    return out.str();
}

}  // namespace thermowit
