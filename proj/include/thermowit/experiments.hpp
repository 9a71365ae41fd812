#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thermowit/tavis_cummings.hpp"
#include "thermowit/witness.hpp"

namespace thermowit {

// Reproducible experiment pipelines shared by the CLI and the test suites.
// Every function is deterministic given its arguments; the CSV/JSON
// serializations are byte-stable (%.15g, '.' decimal separator, LF endings).

std::string bounds_record_json(const DensityMatrix& rho, const Hamiltonian& h, double beta);

struct WernerRow {
    double lambda;
    double q_c;
    double q_h;
    double q_star_c;
    double q_star_h;
    bool detected;
};

struct WernerSweep {
    std::vector<WernerRow> rows;
    WitnessEnvelope envelope;  // same for every lambda (exact marginal data)
};

/// Heat transfer of the isotropic family against the separable envelope,
/// on a uniform lambda grid. Local Hamiltonians are d-level ladders; the
/// envelope uses the exact marginal data E_k = (d-1)/2, S_k = log d.
WernerSweep werner_sweep(int d, double beta, int lambda_steps,
                         double margin = kDefaultWitnessMargin);

std::string werner_sweep_csv(const WernerSweep& sweep, int d, double beta, int lambda_steps);

std::string lambda_crt_csv(int d_max);

struct AsymptoticRow {
    int d;
    double beta;
    double numeric_magnitude;
    double asymptotic;
    double rel_err;
};

/// Left-root magnitude of the bipartite ladder problem with E = d-1 and
/// S = log d (overridable) against the closed-form large-beta value.
std::vector<AsymptoticRow> asymptotic_rows(const std::vector<int>& d_list,
                                           const std::vector<double>& beta_list,
                                           std::optional<double> entropy_override);

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows,
                           std::optional<double> entropy_override);

struct TCRunConfig {
    double epsilon = 1.0;
    double g = 1.0;
    double beta = 0.3;
    double tau = M_PI / 4.0;
    int n_max = 8;
    int steps = 200;
    bool incoherent_control = false;  // replace the input by the spin Gibbs state
    double leakage_threshold = kNoLeakageCheck;
};

TCTrajectory tc_run(const TCRunConfig& cfg);
std::string tc_csv(const TCTrajectory& traj, const TCRunConfig& cfg);
std::string tc_summary_json(const TCTrajectory& traj);

std::string verdict_name(Verdict v);

std::string witness_json(const std::string& kind, const WitnessEnvelope& env,
                         std::optional<double> q_measured, double margin);

}  // namespace thermowit
