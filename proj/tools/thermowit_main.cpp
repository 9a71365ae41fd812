#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thermowit/errors.hpp"
#include "thermowit/experiments.hpp"
#include "thermowit/io.hpp"
#include "thermowit/version.hpp"

namespace {

using namespace thermowit;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitSolver = 4;

struct BoundsArgs {
    std::string state_path;
    std::string hamiltonian_path;
    double beta = 1.0;
};

struct WernerArgs {
    int d = 2;
    double beta = 0.5;
    int lambda_steps = 400;
    double margin = kDefaultWitnessMargin;
    std::string out;
};

struct LambdaCrtArgs {
    int d_max = 7;
    std::string out;
};

struct AsymptoticArgs {
    std::vector<int> d_list{2, 3, 4, 5};
    std::vector<double> beta_list{10.0, 20.0, 50.0};
    std::optional<double> entropy;
    std::string out;
};

struct TCArgs {
    TCRunConfig cfg;
    std::string tau_expr = "pi/4";
    std::string control = "none";
    std::string out;
};

struct WitnessArgs {
    std::string kind;
    double beta = 1.0;
    std::string hamiltonian_path;
    std::vector<double> local_energies;
    std::vector<double> local_entropies;
    std::string state_path;
    std::vector<std::string> local_hamiltonian_paths;
    bool dim_only = false;
    std::optional<double> energy;   // incoherent kind
    std::optional<double> q;
    double margin = kDefaultWitnessMargin;
};

int run_bounds(const BoundsArgs& a) {
    const DensityMatrix rho = load_density_matrix(a.state_path);
    const Hamiltonian h = load_hamiltonian(a.hamiltonian_path);
    std::cout << bounds_record_json(rho, h, a.beta);
    return kExitOk;
}

int run_werner(const WernerArgs& a) {
    const WernerSweep sweep = werner_sweep(a.d, a.beta, a.lambda_steps, a.margin);
    atomic_write_file(a.out, werner_sweep_csv(sweep, a.d, a.beta, a.lambda_steps));
    return kExitOk;
}

int run_lambda_crt(const LambdaCrtArgs& a) {
    atomic_write_file(a.out, lambda_crt_csv(a.d_max));
    return kExitOk;
}

int run_asymptotic(const AsymptoticArgs& a) {
    const auto rows = asymptotic_rows(a.d_list, a.beta_list, a.entropy);
    atomic_write_file(a.out, asymptotic_csv(rows, a.entropy));
    return kExitOk;
}

int run_tc(TCArgs a) {
    a.cfg.tau = parse_time_expr(a.tau_expr);
    if (a.control == "incoherent")
        a.cfg.incoherent_control = true;
    else if (a.control != "none")
        throw ValidationError("--control must be 'none' or 'incoherent'");
    const TCTrajectory traj = tc_run(a.cfg);
    atomic_write_file(a.out, tc_csv(traj, a.cfg));
    std::cout << tc_summary_json(traj);
    return kExitOk;
}

int run_witness(const WitnessArgs& a) {
    const Hamiltonian h = load_hamiltonian(a.hamiltonian_path);
    SetBound bound{};
    if (a.kind == "separable") {
        std::vector<LocalData> locals;
        if (!a.state_path.empty()) {
            if (a.local_hamiltonian_paths.empty())
                throw ValidationError(
                    "separable witness from a state file needs --local-hamiltonians");
            const DensityMatrix rho = load_density_matrix(a.state_path);
            std::vector<Hamiltonian> local_h;
            local_h.reserve(a.local_hamiltonian_paths.size());
            for (const auto& p : a.local_hamiltonian_paths) local_h.push_back(load_hamiltonian(p));
            locals = local_data(rho, local_h);
            // No-entropy-information fallback: only the zero floor is sound,
            // so the envelope can only widen.
            if (a.dim_only)
                for (auto& l : locals) l.entropy = 0.0;
        } else {
            if (a.local_energies.size() != a.local_entropies.size() || a.local_energies.size() < 2)
                throw ValidationError(
                    "separable witness needs matching --local-energies/--local-entropies lists "
                    "(>= 2 parties) or a --state file");
            for (std::size_t k = 0; k < a.local_energies.size(); ++k)
                locals.push_back(LocalData{a.local_energies[k], a.local_entropies[k]});
        }
        bound = sep_free_energy_bound(locals, a.beta);
    } else if (a.kind == "incoherent") {
        if (!a.energy) throw ValidationError("incoherent witness needs --energy");
        bound = incoh_free_energy_bound(*a.energy, h, a.beta);
    } else {
        throw ValidationError("--kind must be 'separable' or 'incoherent'");
    }
    const WitnessEnvelope env = witness_heat_bounds(bound, h, a.beta);
    std::cout << witness_json(a.kind, env, a.q, a.margin);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermowit: optimal heat exchange with a quantum memory and heat-based witnesses"};
    app.set_version_flag("--version", std::string("thermowit v") + kVersion);
    app.set_config("--config", "", "TOML config file mirroring the flags (flags win)");
    app.fallthrough();
    app.require_subcommand(1);

    BoundsArgs bounds_args;
    auto* cmd_bounds = app.add_subcommand("bounds", "Heat bounds of a state file");
    cmd_bounds->add_option("--state", bounds_args.state_path, "state JSON file")->required();
    cmd_bounds->add_option("--hamiltonian", bounds_args.hamiltonian_path, "Hamiltonian JSON file")
        ->required();
    cmd_bounds->add_option("--beta", bounds_args.beta, "environment inverse temperature")->required();

    WernerArgs werner_args;
    auto* cmd_werner = app.add_subcommand("werner-sweep", "Isotropic-family heat sweep vs the separable envelope");
    cmd_werner->add_option("--d", werner_args.d, "local dimension (2..7)");
    cmd_werner->add_option("--beta", werner_args.beta, "environment inverse temperature");
    cmd_werner->add_option("--lambda-steps", werner_args.lambda_steps, "grid points on [0, 1]");
    cmd_werner->add_option("--margin", werner_args.margin, "detection margin");
    cmd_werner->add_option("--out", werner_args.out, "output CSV path")->required();

    LambdaCrtArgs lc_args;
    auto* cmd_lc = app.add_subcommand("lambda-crt", "Detection threshold per dimension");
    cmd_lc->add_option("--d-max", lc_args.d_max, "largest dimension (2..12)");
    cmd_lc->add_option("--out", lc_args.out, "output CSV path")->required();

    AsymptoticArgs asym_args;
    auto* cmd_asym = app.add_subcommand("asymptotic", "Left root vs its closed-form large-beta value");
    cmd_asym->add_option("--d", asym_args.d_list, "local dimensions")->delimiter(',');
    cmd_asym->add_option("--beta", asym_args.beta_list, "inverse temperatures")->delimiter(',');
    double entropy_val = 0.0;
    auto* entropy_opt = cmd_asym->add_option("--entropy", entropy_val, "override the global entropy (default log d)");
    cmd_asym->add_option("--out", asym_args.out, "output CSV path")->required();

    TCArgs tc_args;
    auto* cmd_tc = app.add_subcommand("tavis-cummings", "Two spins coupled to a truncated field mode");
    cmd_tc->add_option("--epsilon", tc_args.cfg.epsilon, "spin gap and field frequency");
    cmd_tc->add_option("--g", tc_args.cfg.g, "coupling strength");
    cmd_tc->add_option("--beta", tc_args.cfg.beta, "inverse temperature");
    cmd_tc->add_option("--tau", tc_args.tau_expr, "cycle time; accepts pi expressions like pi/4");
    cmd_tc->add_option("--n-max", tc_args.cfg.n_max, "Fock truncation");
    cmd_tc->add_option("--steps", tc_args.cfg.steps, "time grid points");
    cmd_tc->add_option("--control", tc_args.control, "'incoherent' reruns with the spin Gibbs input");
    cmd_tc->add_option("--leakage-threshold", tc_args.cfg.leakage_threshold,
                       "fail when the memory's top-two Fock population exceeds this");
    cmd_tc->add_option("--out", tc_args.out, "output CSV path")->required();

    WitnessArgs wit_args;
    auto* cmd_wit = app.add_subcommand("witness", "Set-level heat envelope and verdict");
    cmd_wit->add_option("--kind", wit_args.kind, "'separable' or 'incoherent'")->required();
    cmd_wit->add_option("--beta", wit_args.beta, "environment inverse temperature")->required();
    cmd_wit->add_option("--hamiltonian", wit_args.hamiltonian_path, "composite Hamiltonian JSON file")
        ->required();
    cmd_wit->add_option("--local-energies", wit_args.local_energies, "per-party energies")
        ->delimiter(',');
    cmd_wit->add_option("--local-entropies", wit_args.local_entropies, "per-party entropies")
        ->delimiter(',');
    cmd_wit->add_option("--state", wit_args.state_path, "state JSON file (marginal data source)");
    cmd_wit->add_option("--local-hamiltonians", wit_args.local_hamiltonian_paths,
                        "per-party Hamiltonian JSON files")
        ->delimiter(',');
    cmd_wit->add_flag("--dim-only", wit_args.dim_only, "ignore marginal entropies (zero entropy floor)");
    double energy_val = 0.0;
    auto* energy_opt = cmd_wit->add_option("--energy", energy_val, "fixed average energy (incoherent kind)");
    double q_val = 0.0;
    auto* q_opt = cmd_wit->add_option("--q", q_val, "measured heat to test against the envelope");
    cmd_wit->add_option("--margin", wit_args.margin, "verdict margin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    try {
        if (*cmd_bounds) return run_bounds(bounds_args);
        if (*cmd_werner) return run_werner(werner_args);
        if (*cmd_lc) return run_lambda_crt(lc_args);
        if (*cmd_asym) {
            if (*entropy_opt) asym_args.entropy = entropy_val;
            return run_asymptotic(asym_args);
        }
        if (*cmd_tc) return run_tc(tc_args);
        if (*cmd_wit) {
            if (*energy_opt) wit_args.energy = energy_val;
            if (*q_opt) wit_args.q = q_val;
            return run_witness(wit_args);
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible problem: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const NumericalError& e) {
        std::cerr << "numerical inconsistency: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
