#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thermowit/errors.hpp"
#include "thermowit/experiments.hpp"
#include "thermowit/io.hpp"
#include "thermowit/random.hpp"

using namespace thermowit;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("thermowit_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& stdout_path = {}) {
    std::string cmd = std::string(THERMOWIT_CLI_PATH) + " " + args;
    if (!stdout_path.empty()) cmd += " > " + stdout_path.string();
    cmd += " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path qubit_state_path() {
    const fs::path p = test_dir() / "mixed_qubit.json";
    write_file(p, R"({"dims":[2],"re":[0.5,0,0,0.5],"im":[0,0,0,0]})");
    return p;
}

fs::path qubit_ham_path() {
    const fs::path p = test_dir() / "ham_qubit.json";
    write_file(p, R"({"dims":[2],"re":[0,0,0,1],"im":[0,0,0,0]})");
    return p;
}

}  // namespace

TEST_CASE("matrix JSON round trip and validation") {
    Rng rng(44);
    const DensityMatrix rho = random_density_matrix(3, rng);
    const std::string text = matrix_to_json(rho.matrix(), rho.dims());
    const MatrixRecord rec = parse_matrix_json(text);
    CHECK(rec.dims == rho.dims());
    CHECK(max_abs(rec.matrix - rho.matrix()) < 1e-13);

    CHECK_THROWS_AS(parse_matrix_json("{not json"), ValidationError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"dims":[2],"re":[1,0,0],"im":[0,0,0,0]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"dims":[2],"re":[1,0,0,0]})"), ValidationError);

    const fs::path bad = test_dir() / "not_psd.json";
    write_file(bad, R"({"dims":[2],"re":[1.5,0,0,-0.5],"im":[0,0,0,0]})");
    CHECK_THROWS_AS(load_density_matrix(bad.string()), ValidationError);
}

TEST_CASE("numeric formatting and time expressions") {
    CHECK(fmt_g15(0.5) == "0.5");
    CHECK(fmt_g15(1.0 / 3.0) == "0.333333333333333");
    CHECK(fmt_g15(1e-7) == "1e-07");

    CHECK(parse_time_expr("pi/4") == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
    CHECK(parse_time_expr("0.5*pi") == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
    CHECK(parse_time_expr("2pi") == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(parse_time_expr(" pi ") == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(parse_time_expr("1.25") == doctest::Approx(1.25));
    CHECK_THROWS_AS(parse_time_expr("pi/0"), ValidationError);
    CHECK_THROWS_AS(parse_time_expr("abc"), ValidationError);
    CHECK_THROWS_AS(parse_time_expr("1.2.3"), ValidationError);
}

TEST_CASE("bounds record") {
    const Hamiltonian h = ladder_hamiltonian(3);
    const std::string text = bounds_record_json(gibbs_state(h, 1.0), h, 1.0);
    const auto j = nlohmann::json::parse(text);
    for (const char* key : {"beta_c", "beta_h", "q_c", "q_h", "h_capped", "degenerate", "E", "S", "F"})
        CHECK(j.contains(key));
    CHECK(j["degenerate"].get<bool>());
    CHECK(std::abs(j["q_c"].get<double>()) < 1e-10);
    CHECK(std::abs(j["q_h"].get<double>()) < 1e-10);

    // sentinel serialization for a pure excited qubit
    Matrix excited = Matrix::Zero(2, 2);
    excited(1, 1) = 1.0;
    const std::string sent =
        bounds_record_json(DensityMatrix(excited, {2}), ladder_hamiltonian(2), 1.0);
    const auto js = nlohmann::json::parse(sent);
    CHECK(js["beta_c"].is_string());
    CHECK(js["beta_c"].get<std::string>() == "-inf");
    CHECK(js["beta_h"].is_null());
    CHECK(js["h_capped"].get<bool>());
}

TEST_CASE("werner sweep pipeline") {
    const WernerSweep sweep = werner_sweep(2, 0.5, 21);
    REQUIRE(sweep.rows.size() == 21);
    CHECK(sweep.rows.front().lambda == 0.0);
    CHECK(sweep.rows.back().lambda == 1.0);
    CHECK(sweep.rows.front().q_h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sweep.rows.front().detected);
    CHECK_FALSE(sweep.rows.back().detected);

    const std::string csv = werner_sweep_csv(sweep, 2, 0.5, 21);
    CHECK(csv.rfind("# thermowit v", 0) == 0);
    CHECK(csv.find("cmd=werner-sweep") != std::string::npos);
    CHECK(csv.find("lambda,q_c,q_h,q_star_c,q_star_h,detected\n") != std::string::npos);

    // byte-stable across reruns
    CHECK(werner_sweep_csv(werner_sweep(2, 0.5, 21), 2, 0.5, 21) == csv);

    CHECK_THROWS_AS(werner_sweep(8, 0.5, 21), ValidationError);
    CHECK_THROWS_AS(werner_sweep(2, 0.5, 1), ValidationError);
}

TEST_CASE("lambda_crt and asymptotic tables") {
    const std::string lc = lambda_crt_csv(5);
    std::istringstream lines(lc);
    std::string line;
    std::getline(lines, line);  // provenance
    std::getline(lines, line);
    CHECK(line == "d,lambda_crt");
    double prev = 0.0;
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        CHECK(std::stoi(line.substr(0, comma)) == 2 + rows);
        const double v = std::stod(line.substr(comma + 1));
        CHECK(v > prev);
        prev = v;
        ++rows;
    }
    CHECK(rows == 4);

    const auto rows_a = asymptotic_rows({2, 3}, {10.0, 20.0}, std::nullopt);
    REQUIRE(rows_a.size() == 4);
    for (const auto& r : rows_a) CHECK(r.rel_err < 0.1);
    CHECK(asymptotic_csv(rows_a, std::nullopt) ==
          asymptotic_csv(asymptotic_rows({2, 3}, {10.0, 20.0}, std::nullopt), std::nullopt));
}

TEST_CASE("tavis-cummings pipeline determinism") {
    TCRunConfig cfg;
    cfg.n_max = 6;
    cfg.steps = 24;
    const TCTrajectory t1 = tc_run(cfg);
    const TCTrajectory t2 = tc_run(cfg);
    CHECK(tc_csv(t1, cfg) == tc_csv(t2, cfg));
    const auto j = nlohmann::json::parse(tc_summary_json(t1));
    CHECK(j.contains("max_q"));
    CHECK(j.contains("fixed_point_residual"));
}

TEST_CASE("cli exit codes and outputs") {
    const fs::path out_json = test_dir() / "bounds_out.json";

    SUBCASE("bounds on a valid state") {
        const int rc = run_cli("bounds --state " + qubit_state_path().string() +
                                   " --hamiltonian " + qubit_ham_path().string() + " --beta 1",
                               out_json);
        CHECK(rc == 0);
        const auto j = nlohmann::json::parse(read_file(out_json));
        CHECK(j["q_h"].get<double>() == doctest::Approx(0.42382790117942).epsilon(1e-9));
        CHECK(j["E"].get<double>() == doctest::Approx(0.5));
    }

    SUBCASE("malformed input exits 2") {
        const fs::path bad = test_dir() / "bad.json";
        write_file(bad, "{broken");
        CHECK(run_cli("bounds --state " + bad.string() + " --hamiltonian " +
                      qubit_ham_path().string() + " --beta 1") == 2);
    }

    SUBCASE("unknown flags exit 2") {
        CHECK(run_cli("bounds --no-such-flag") == 2);
        CHECK(run_cli("no-such-command") == 2);
    }

    SUBCASE("infeasible set data exits 3") {
        const fs::path ham4 = test_dir() / "ham4.json";
        Matrix h = Matrix::Zero(4, 4);
        h(1, 1) = h(2, 2) = 1.0;
        h(3, 3) = 2.0;
        write_file(ham4, matrix_to_json(h, {2, 2}));
        CHECK(run_cli("witness --kind separable --beta 1 --hamiltonian " + ham4.string() +
                      " --local-energies 0.05,0.05 --local-entropies 1.37,1.37") == 3);
    }

    SUBCASE("truncation failure exits 4 and leaves no output") {
        const fs::path out = test_dir() / "tc_fail.csv";
        CHECK(run_cli("tavis-cummings --n-max 8 --leakage-threshold 1e-6 --out " + out.string()) ==
              4);
        CHECK_FALSE(fs::exists(out));
    }

    SUBCASE("werner sweep writes an atomic csv, reruns byte-identical") {
        const fs::path out1 = test_dir() / "w1.csv";
        const fs::path out2 = test_dir() / "w2.csv";
        CHECK(run_cli("werner-sweep --d 2 --beta 0.5 --lambda-steps 11 --out " + out1.string()) == 0);
        CHECK(run_cli("werner-sweep --d 2 --beta 0.5 --lambda-steps 11 --out " + out2.string()) == 0);
        const std::string c1 = read_file(out1);
        CHECK(c1 == read_file(out2));
        CHECK(c1.rfind("# thermowit v", 0) == 0);
        CHECK(c1.back() == '\n');
    }

    SUBCASE("witness verdict output") {
        const fs::path ham4 = test_dir() / "ham4b.json";
        Matrix h = Matrix::Zero(4, 4);
        h(1, 1) = h(2, 2) = 1.0;
        h(3, 3) = 2.0;
        write_file(ham4, matrix_to_json(h, {2, 2}));
        const fs::path out = test_dir() / "witness_out.json";
        const int rc = run_cli(
            "witness --kind separable --beta 0.5 --hamiltonian " + ham4.string() +
                " --local-energies 0.5,0.5 --local-entropies 0.693147180559945,0.693147180559945 "
                "--q 1.0",
            out);
        CHECK(rc == 0);
        const auto j = nlohmann::json::parse(read_file(out));
        CHECK(j["verdict"].get<std::string>() == "detected-high");

        const int rc2 = run_cli("witness --kind incoherent --beta 1 --hamiltonian " +
                                    qubit_ham_path().string() + " --energy 0.268941421369995 --q 0",
                                out);
        CHECK(rc2 == 0);
        const auto j2 = nlohmann::json::parse(read_file(out));
        CHECK(std::abs(j2["q_star_c"].get<double>()) < 1e-9);
        CHECK(std::abs(j2["q_star_h"].get<double>()) < 1e-9);
        CHECK(j2["verdict"].get<std::string>() == "inside");
    }

    SUBCASE("config file mirrors flags, flags win") {
        const fs::path cfg = test_dir() / "cfg.toml";
        const fs::path out = test_dir() / "cfg_out.csv";
        write_file(cfg, "[werner-sweep]\nd=2\nbeta=0.5\nlambda-steps=5\nout=\"" + out.string() +
                            "\"\n");
        CHECK(run_cli("werner-sweep --config " + cfg.string()) == 0);
        std::istringstream lines(read_file(out));
        int n = 0;
        std::string line;
        while (std::getline(lines, line)) ++n;
        CHECK(n == 2 + 5);  // provenance + header + rows

        CHECK(run_cli("werner-sweep --config " + cfg.string() + " --lambda-steps 7") == 0);
        std::istringstream lines2(read_file(out));
        n = 0;
        while (std::getline(lines2, line)) ++n;
        CHECK(n == 2 + 7);
    }
}
