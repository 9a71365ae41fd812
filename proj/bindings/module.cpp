#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thermowit/errors.hpp"
#include "thermowit/experiments.hpp"
#include "thermowit/io.hpp"
#include "thermowit/random.hpp"
#include "thermowit/version.hpp"

namespace py = pybind11;
using namespace thermowit;

namespace {

Dims dims_or_default(const std::vector<int>& dims, Eigen::Index n) {
    return dims.empty() ? Dims{static_cast<int>(n)} : dims;
}

DensityMatrix as_state(const Matrix& m, const std::vector<int>& dims) {
    return DensityMatrix(m, dims_or_default(dims, m.rows()));
}

Hamiltonian as_hamiltonian(const Matrix& m, const std::vector<int>& dims) {
    return Hamiltonian(m, dims_or_default(dims, m.rows()));
}

py::dict heat_bounds_dict(const HeatBounds& hb) {
    py::dict out;
    out["beta_c"] = hb.beta_c;
    out["beta_h"] = hb.beta_h ? py::object(py::float_(*hb.beta_h)) : py::object(py::none());
    out["q_c"] = hb.q_c;
    out["q_h"] = hb.q_h;
    out["h_capped"] = hb.h_capped;
    out["degenerate"] = hb.degenerate;
    return out;
}

py::dict envelope_dict(const WitnessEnvelope& env) {
    py::dict out;
    out["f_star"] = env.f_star;
    out["s_floor"] = env.s_floor;
    out["e_cap"] = env.e_cap;
    out["beta_star_c"] = env.beta_star_c;
    out["beta_star_h"] =
        env.beta_star_h ? py::object(py::float_(*env.beta_star_h)) : py::object(py::none());
    out["q_star_c"] = env.q_star_c;
    out["q_star_h"] = env.q_star_h;
    return out;
}

}  // namespace

PYBIND11_MODULE(_thermowit, m) {
    m.doc() = "Optimal heat exchange with a quantum memory and heat-based witnesses";

    m.def("version", []() { return std::string(kVersion); });

    // ---- dense quantum primitives ----
    m.def("tensor_product", [](const Matrix& a, const Matrix& b) { return tensor_product(a, b); },
          py::arg("a"), py::arg("b"));
    m.def("partial_trace",
          [](const Matrix& mtx, const std::vector<int>& dims, const std::vector<int>& keep) {
              return partial_trace(mtx, dims, keep);
          },
          py::arg("matrix"), py::arg("dims"), py::arg("keep"));
    m.def("hermitian_spectrum",
          [](const Matrix& a) {
              const Spectrum s = hermitian_spectrum(a);
              return py::make_tuple(s.eigenvalues, s.eigenvectors);
          },
          py::arg("matrix"));
    m.def("gibbs_state",
          [](const Matrix& h, double x, const std::vector<int>& dims) {
              return gibbs_state(as_hamiltonian(h, dims), x).matrix();
          },
          py::arg("hamiltonian"), py::arg("x"), py::arg("dims") = std::vector<int>{});
    m.def("log_partition",
          [](const Matrix& h, double x) { return log_partition(as_hamiltonian(h, {}), x); },
          py::arg("hamiltonian"), py::arg("x"));
    m.def("von_neumann_entropy",
          [](const Matrix& rho) { return von_neumann_entropy(as_state(rho, {})); },
          py::arg("rho"));
    m.def("binary_entropy", &binary_entropy, py::arg("p"));
    m.def("relative_entropy",
          [](const Matrix& rho, const Matrix& sigma) {
              return relative_entropy(as_state(rho, {}), as_state(sigma, {}));
          },
          py::arg("rho"), py::arg("sigma"));
    m.def("conditional_entropy",
          [](const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& a,
             const std::vector<int>& b) { return conditional_entropy(as_state(rho, dims), a, b); },
          py::arg("rho"), py::arg("dims"), py::arg("a"), py::arg("b"));
    m.def("mutual_information",
          [](const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& a,
             const std::vector<int>& b) { return mutual_information(as_state(rho, dims), a, b); },
          py::arg("rho"), py::arg("dims"), py::arg("a"), py::arg("b"));
    m.def("average_energy",
          [](const Matrix& rho, const Matrix& h) {
              return average_energy(as_state(rho, {}), as_hamiltonian(h, {}));
          },
          py::arg("rho"), py::arg("hamiltonian"));
    m.def("free_energy",
          [](const Matrix& rho, const Matrix& h, double beta) {
              return free_energy(as_state(rho, {}), as_hamiltonian(h, {}), beta);
          },
          py::arg("rho"), py::arg("hamiltonian"), py::arg("beta"));
    m.def("dephase",
          [](const Matrix& rho, const Matrix& h) {
              return dephase(as_state(rho, {}), as_hamiltonian(h, {})).matrix();
          },
          py::arg("rho"), py::arg("hamiltonian"));
    m.def("rel_entropy_of_coherence",
          [](const Matrix& rho, const Matrix& h) {
              return rel_entropy_of_coherence(as_state(rho, {}), as_hamiltonian(h, {}));
          },
          py::arg("rho"), py::arg("hamiltonian"));
    m.def("trace_distance",
          [](const Matrix& rho, const Matrix& sigma) {
              return trace_distance(as_state(rho, {}), as_state(sigma, {}));
          },
          py::arg("rho"), py::arg("sigma"));
    m.def("random_density_matrix",
          [](int dim, std::uint64_t seed) { return random_density_matrix(dim, seed).matrix(); },
          py::arg("dim"), py::arg("seed"));
    m.def("random_separable_state",
          [](const std::vector<int>& dims, int k, std::uint64_t seed) {
              return random_separable_state(dims, k, seed).matrix();
          },
          py::arg("dims"), py::arg("k"), py::arg("seed"));
    m.def("ladder_hamiltonian", [](int d) { return ladder_hamiltonian(d).matrix(); }, py::arg("d"));

    // ---- heat bounds ----
    m.def("f_function",
          [](double x, double y, const Matrix& h, double beta, const std::vector<int>& dims) {
              return f_function(x, y, as_hamiltonian(h, dims), beta);
          },
          py::arg("x"), py::arg("y"), py::arg("hamiltonian"), py::arg("beta"),
          py::arg("dims") = std::vector<int>{});
    m.def("find_beta_roots",
          [](double energy, double entropy, double beta, const Matrix& h,
             const std::vector<int>& dims) {
              const BetaRoots r =
                  find_beta_roots(ScalarProblem{energy, entropy, beta}, as_hamiltonian(h, dims));
              py::dict out;
              out["beta_c"] = r.beta_c;
              out["beta_h"] = r.beta_h ? py::object(py::float_(*r.beta_h)) : py::object(py::none());
              out["degenerate"] = r.degenerate;
              return out;
          },
          py::arg("energy"), py::arg("entropy"), py::arg("beta"), py::arg("hamiltonian"),
          py::arg("dims") = std::vector<int>{});
    m.def("heat_bounds",
          [](const Matrix& rho, const Matrix& h, double beta, const std::vector<int>& dims) {
              return heat_bounds_dict(heat_bounds(as_state(rho, dims), as_hamiltonian(h, dims), beta));
          },
          py::arg("rho"), py::arg("hamiltonian"), py::arg("beta"),
          py::arg("dims") = std::vector<int>{});
    m.def("heat_bounds_scalar",
          [](double energy, double entropy, double beta, const Matrix& h,
             const std::vector<int>& dims) {
              return heat_bounds_dict(
                  heat_bounds_scalar(ScalarProblem{energy, entropy, beta}, as_hamiltonian(h, dims)));
          },
          py::arg("energy"), py::arg("entropy"), py::arg("beta"), py::arg("hamiltonian"),
          py::arg("dims") = std::vector<int>{});
    m.def("heat_bounds_oracle",
          [](const Matrix& rho, const Matrix& h, double beta, int grid, int samples,
             std::uint64_t seed, const std::vector<int>& dims) {
              const OracleBounds ob =
                  heat_bounds_oracle(as_state(rho, dims), as_hamiltonian(h, dims), beta, grid,
                                     samples, seed);
              py::dict out;
              out["q_c"] = ob.q_c;
              out["q_h"] = ob.q_h;
              out["tier_b_q_c"] = ob.tier_b_q_c;
              out["tier_b_q_h"] = ob.tier_b_q_h;
              out["feasible_samples"] = ob.feasible_samples;
              return out;
          },
          py::arg("rho"), py::arg("hamiltonian"), py::arg("beta"), py::arg("grid") = 2000,
          py::arg("samples") = 200, py::arg("seed") = 1, py::arg("dims") = std::vector<int>{});
    m.def("ho_constraint_objective",
          [](double beta_tilde, double energy, double entropy, double beta, int n_parties, int d) {
              const HOPoint p =
                  ho_constraint_objective(beta_tilde, ScalarProblem{energy, entropy, beta},
                                          n_parties, d);
              return py::make_tuple(p.objective, p.constraint);
          },
          py::arg("beta_tilde"), py::arg("energy"), py::arg("entropy"), py::arg("beta"),
          py::arg("n_parties"), py::arg("d"));
    m.def("beta_c_asymptotic", &beta_c_asymptotic, py::arg("d"), py::arg("beta"));

    // ---- witnesses ----
    m.def("sep_envelope",
          [](const std::vector<double>& energies, const std::vector<double>& entropies,
             const Matrix& h, double beta, const std::vector<int>& dims) {
              if (energies.size() != entropies.size())
                  throw ValidationError("sep_envelope: energy/entropy lists differ in length");
              std::vector<LocalData> locals;
              for (std::size_t i = 0; i < energies.size(); ++i)
                  locals.push_back(LocalData{energies[i], entropies[i]});
              return envelope_dict(
                  witness_heat_bounds(sep_free_energy_bound(locals, beta), as_hamiltonian(h, dims), beta));
          },
          py::arg("local_energies"), py::arg("local_entropies"), py::arg("hamiltonian"),
          py::arg("beta"), py::arg("dims") = std::vector<int>{});
    m.def("incoh_envelope",
          [](double energy, const Matrix& h, double beta, const std::vector<int>& dims) {
              const Hamiltonian ham = as_hamiltonian(h, dims);
              return envelope_dict(
                  witness_heat_bounds(incoh_free_energy_bound(energy, ham, beta), ham, beta));
          },
          py::arg("energy"), py::arg("hamiltonian"), py::arg("beta"),
          py::arg("dims") = std::vector<int>{});
    m.def("verdict",
          [](double q, double q_star_c, double q_star_h, double margin) {
              WitnessEnvelope env;
              env.q_star_c = q_star_c;
              env.q_star_h = q_star_h;
              return verdict_name(verdict(q, env, margin));
          },
          py::arg("q"), py::arg("q_star_c"), py::arg("q_star_h"),
          py::arg("margin") = kDefaultWitnessMargin);
    m.def("isotropic_state", [](int d, double lam) { return isotropic_state(d, lam).matrix(); },
          py::arg("d"), py::arg("lam"));
    m.def("werner_state", [](double lam) { return werner_state(lam).matrix(); }, py::arg("lam"));
    m.def("lambda_crt", &lambda_crt, py::arg("d"));

    // ---- Tavis-Cummings ----
    m.def("coherent_input_state",
          [](double beta, double epsilon) { return coherent_input_state(beta, epsilon).matrix(); },
          py::arg("beta"), py::arg("epsilon"));
    m.def("memory_fixed_point",
          [](double epsilon, double g, double beta, double tau, int n_max) {
              const TCModel model = build_tc_model(epsilon, g, n_max, beta);
              const FixedPointResult fp =
                  memory_fixed_point(model, coherent_input_state(beta, epsilon), tau);
              py::dict out;
              out["omega"] = fp.omega.matrix();
              out["residual"] = fp.info.residual;
              out["iterations"] = fp.info.iterations;
              out["spectral_fallback"] = fp.info.spectral_fallback;
              return out;
          },
          py::arg("epsilon"), py::arg("g"), py::arg("beta"), py::arg("tau"), py::arg("n_max"));
    m.def("tavis_cummings",
          [](double epsilon, double g, double beta, double tau, int n_max, int steps,
             bool incoherent_control) {
              TCRunConfig cfg;
              cfg.epsilon = epsilon;
              cfg.g = g;
              cfg.beta = beta;
              cfg.tau = tau;
              cfg.n_max = n_max;
              cfg.steps = steps;
              cfg.incoherent_control = incoherent_control;
              const TCTrajectory traj = tc_run(cfg);
              py::dict out;
              out["times"] = traj.times;
              out["q"] = traj.q;
              out["delta"] = traj.delta;
              out["energy_drift"] = traj.energy_drift;
              out["leakage"] = traj.leakage;
              out["max_q"] = traj.max_q;
              out["final_delta"] = traj.final_delta;
              out["fixed_point_residual"] = traj.fixed_point.residual;
              return out;
          },
          py::arg("epsilon") = 1.0, py::arg("g") = 1.0, py::arg("beta") = 0.3,
          py::arg("tau") = M_PI / 4.0, py::arg("n_max") = 8, py::arg("steps") = 200,
          py::arg("incoherent_control") = false);

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
}
