#pragma once

#include <vector>

#include "thermowit/heat_bounds.hpp"
#include "thermowit/state.hpp"

namespace thermowit {

/// Known per-subsystem scalar data of a set of states.
struct LocalData {
    double energy;
    double entropy;
};

/// Set-level free-energy bound and the scalars behind it.
struct SetBound {
    double f_star;   // upper bound on the set's free energy
    double s_floor;  // lower bound on the set's entropy
    double e_cap;    // maximal set energy (cap when the right root is absent)
};

/// Heat interval no member of the set can escape.
struct WitnessEnvelope {
    double f_star = 0.0;
    double s_floor = 0.0;
    double e_cap = 0.0;
    double beta_star_c = 0.0;          // -infinity sentinel allowed
    std::optional<double> beta_star_h; // absent when capped at e_cap
    double q_star_c = 0.0;
    double q_star_h = 0.0;
    bool degenerate = false;
};

enum class Verdict { Inside, DetectedLow, DetectedHigh };

inline constexpr double kDefaultWitnessMargin = 1e-7;

/// Per-subsystem data of a state under per-party Hamiltonians.
std::vector<LocalData> local_data(const DensityMatrix& rho, const std::vector<Hamiltonian>& locals);

/// Free-energy bound over separable states with the given local data:
/// f_star = sum_k E_k - max_k S_k / beta. For more than two parties this is
/// the conditional-entropy chain bound with the best party ordering.
SetBound sep_free_energy_bound(const std::vector<LocalData>& locals, double beta);

/// Free-energy bound over energy-basis-incoherent states of fixed average
/// energy. The entropy floor is the exact minimum over incoherent states
/// with that energy: extreme points of the fixed-energy simplex face are
/// supported on at most two levels, so the floor is the minimum of h(p)
/// over all level pairs bracketing the energy.
SetBound incoh_free_energy_bound(double energy, const Hamiltonian& h, double beta);

/// Roots of f(x, f_star) turned into the heat envelope
/// [q_star_c, q_star_h]; the right root's absence is replaced by the energy
/// cap. Verifies q_star_c <= 0 <= q_star_h on construction.
WitnessEnvelope witness_heat_bounds(const SetBound& bound, const Hamiltonian& h, double beta);

Verdict verdict(double q_measured, const WitnessEnvelope& envelope,
                double margin = kDefaultWitnessMargin);

/// True when either extremal heat of the state escapes the envelope.
bool detects(const HeatBounds& measured, const WitnessEnvelope& envelope,
             double margin = kDefaultWitnessMargin);

/// Two-qudit isotropic state (1-lambda)|psi+><psi+| + lambda I/d^2 with
/// maximally mixed marginals; dims (d, d).
DensityMatrix isotropic_state(int d, double lambda);

/// d = 2 member of the family.
DensityMatrix werner_state(double lambda);

/// Closed-form spectrum of isotropic_state: 1 - lambda + lambda/d^2 (once)
/// and lambda/d^2 (d^2 - 1 times).
RealVector isotropic_spectrum(int d, double lambda);

/// Noise threshold where the isotropic state's conditional entropy crosses
/// zero, i.e. the root of S_AB(lambda) = log d; bisection on (0, 1), and the
/// root's uniqueness is checked by a sign scan.
double lambda_crt(int d);

}  // namespace thermowit
