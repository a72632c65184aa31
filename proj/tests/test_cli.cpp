// End-to-end tests of the contactify binary through a shell.  The binary
// path comes in through CONTACTIFY_BIN; every test talks to it the way a
// user would: files, pipes, exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "contactify/dynamics.hpp"
#include "contactify/sampling.hpp"
#include "contactify/serialization.hpp"

using json = nlohmann::json;
using namespace contactify;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_shell(const std::string& cmd) {
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    REQUIRE(status != -1);
    return {WEXITSTATUS(status), out};
}

RunResult run_cli(const std::string& args) {
    return run_shell(std::string("\"") + CONTACTIFY_BIN + "\" " + args);
}

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / "contactify-cli-tests";
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    const auto path = scratch_dir() / name;
    std::ofstream f(path);
    REQUIRE(f.good());
    f << content;
    f.close();
    return path.string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kSpectrumU3 =
    R"({"eigenvalues": [["1","6"], ["2","6"], ["3","6"]],)"
    R"( "multiplicities": [1, 1, 1]})";

} // namespace

TEST_CASE("integrality report for a rational spectrum") {
    const std::string in = write_file("u3_spectrum.json", kSpectrumU3);
    const RunResult r = run_cli("integrality --input " + in);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["integral"] == true);
    CHECK(j["hbar"] == json::array({"1", "6"}));
    CHECK(j["eigenvalues"] ==
          json::array({json::array({"1", "6"}), json::array({"1", "3"}),
                       json::array({"1", "2"})}));
    CHECK(j["multiplicities"] == json::array({1, 1, 1}));
    CHECK(j["isotropy_dim"] == 3);
    CHECK(j["isotropy_zero_dim"] == 2);
    CHECK(j["orbit_dim"] == 6);
    CHECK(j["contactification_dim"] == 7);
    CHECK(j["is_quantum_state"] == true);
}

TEST_CASE("integrality report from a conjugated Hermitian matrix") {
    sampling::Rng rng(404);
    Eigen::VectorXd eigs(3);
    eigs << 1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0;
    const lie::HermitianMatrix mu = sampling::hermitian_with_spectrum(eigs, rng);
    const std::string in =
        write_file("u3_matrix.json",
                   io::matrix_to_value(mu.raw(), "hermitian").dump());
    const RunResult r = run_cli("integrality --input " + in);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["integral"] == true);
    CHECK(j["hbar"] == json::array({"1", "6"}));
    CHECK(j["isotropy_dim"] == 3);
    CHECK(j["orbit_dim"] == 6);
    CHECK(j["contactification_dim"] == 7);
}

TEST_CASE("orbit-info reports clusters and dimensions") {
    sampling::Rng rng(405);
    Eigen::VectorXd eigs(3);
    eigs << 1.0 / 6.0, 1.0 / 6.0, 2.0 / 6.0;
    const lie::HermitianMatrix mu = sampling::hermitian_with_spectrum(eigs, rng);
    const std::string in =
        write_file("orbit_matrix.json",
                   io::matrix_to_value(mu.raw(), "hermitian").dump());
    const RunResult r = run_cli("orbit-info --input " + in);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["spectrum"].size() == 2);
    CHECK(j["spectrum"][0].get<double>() == doctest::Approx(1.0 / 6.0));
    CHECK(j["spectrum"][1].get<double>() == doctest::Approx(2.0 / 6.0));
    CHECK(j["multiplicities"] == json::array({2, 1}));
    CHECK(j["isotropy_dim"] == 5);
    CHECK(j["orbit_dim"] == 4);
}

TEST_CASE("orbit-info rejects a non-Hermitian input kind") {
    sampling::Rng rng(406);
    const lie::UnitaryMatrix u = sampling::unitary(3, rng);
    const std::string in = write_file(
        "orbit_unitary.json", io::matrix_to_value(u.raw(), "unitary").dump());
    const RunResult r = run_cli("orbit-info --input " + in);
    CHECK(r.code == 1);
    const json j = json::parse(r.out);
    CHECK(j["code"] == "parse_error");
}

TEST_CASE("simulate writes a deterministic CSV with the fixed header") {
    const std::string args =
        "simulate --t1 6.283185307179586 --dt 0.001 --x0 0.6 0.2 0.4 0 --out ";
    const auto out1 = (scratch_dir() / "traj1.csv").string();
    const auto out2 = (scratch_dir() / "traj2.csv").string();
    REQUIRE(run_cli(args + out1).code == 0);
    REQUIRE(run_cli(args + out2).code == 0);

    const std::string csv = slurp(out1);
    std::istringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    CHECK(header == std::string(io::kTrajectoryCsvHeader));
    CHECK(csv == slurp(out2));
}

TEST_CASE("action of a simulated trajectory matches the conserved energy") {
    const auto traj_path = (scratch_dir() / "traj_action.csv").string();
    REQUIRE(run_cli("simulate --t1 6.283185307179586 --dt 0.001 "
                    "--x0 0.6 0.2 0.4 0 --out " +
                    traj_path)
                .code == 0);
    const RunResult r = run_cli("action --input " + traj_path);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);

    // |z1|^2 = 0.4/0.56 on the normalized state; the orthogonal gauge kills
    // the form part, so the action is just Hhat * t1.
    const double hhat = 0.5 * (0.4 / 0.56);
    const double expected = hhat * 6.283185307179586;
    CHECK(j["value"].get<double>() == doctest::Approx(expected).epsilon(1e-8));
    CHECK(j["hamiltonian_part"].get<double>() ==
          doctest::Approx(expected).epsilon(1e-8));
    CHECK(std::abs(j["form_part"].get<double>()) < 1e-8);
}

TEST_CASE("action of an analytic fiber circle") {
    // gamma(t) = (exp(-it) z1, z2) is carried by the Reeb direction scaled
    // into the fiber; its action is 2 pi |z1|^2 for any speed-one loop.
    const double r1 = 0.6, r2 = 0.8;
    const int m = 2000;
    std::vector<double> times;
    std::vector<contact::SpherePoint> states;
    for (int k = 0; k <= m; ++k) {
        const double t = 2.0 * M_PI * k / m;
        contact::CVector z(2);
        z << std::polar(r1, -t), contact::Complex(r2, 0.0);
        times.push_back(t);
        states.push_back(contact::SpherePoint(z));
    }
    dynamics::Trajectory traj = dynamics::assemble_trajectory(
        times, states, dynamics::GaugeChoice::orthogonal());

    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj, dynamics::linear_z());
    const std::string path = write_file("circle.csv", csv.str());

    const RunResult r = run_cli("action --input " + path);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["value"].get<double>() ==
          doctest::Approx(2.0 * M_PI * r1 * r1).epsilon(1e-9));
    CHECK(j["hamiltonian_part"].get<double>() ==
          doctest::Approx(M_PI * r1 * r1).epsilon(1e-9));
    CHECK(j["form_part"].get<double>() ==
          doctest::Approx(-M_PI * r1 * r1).epsilon(1e-9));
}

TEST_CASE("CSV read-write cycle preserves the file byte for byte") {
    const auto path = (scratch_dir() / "traj_cycle.csv").string();
    REQUIRE(run_cli("simulate --t1 1.0 --dt 0.001 --x0 0.6 0.2 0.4 0 --out " +
                    path)
                .code == 0);
    const std::string original = slurp(path);

    std::istringstream in(original);
    const dynamics::Trajectory traj = io::read_trajectory_csv(in);
    std::ostringstream out;
    io::write_trajectory_csv(out, traj, dynamics::linear_z());
    CHECK(out.str() == original);
}

TEST_CASE("verify passes on every suite and honours the suite filter") {
    const RunResult all = run_cli("verify --samples 40 --seed 3");
    REQUIRE(all.code == 0);
    const json j = json::parse(all.out);
    CHECK(j["pass"] == true);
    REQUIRE(j["suites"].size() == 5);
    for (const auto& row : j["suites"]) {
        CHECK(row["samples"] == 40);
        CHECK(row["pass"] == true);
        CHECK(row["max_error"].get<double>() <= 1.0);
        CHECK(row["worst"].is_string());
    }

    const RunResult one = run_cli("verify --samples 25 --suite contact");
    REQUIRE(one.code == 0);
    const json j1 = json::parse(one.out);
    REQUIRE(j1["suites"].size() == 1);
    CHECK(j1["suites"][0]["suite"] == "contact");
}

TEST_CASE("CONTACTIFY_SEED overrides the --seed flag") {
    const RunResult direct = run_cli("--seed 5 verify --samples 30");
    const RunResult via_env = run_shell(std::string("CONTACTIFY_SEED=5 \"") +
                                        CONTACTIFY_BIN +
                                        "\" --seed 99 verify --samples 30");
    REQUIRE(direct.code == 0);
    REQUIRE(via_env.code == 0);
    CHECK(direct.out == via_env.out);
    CHECK(json::parse(via_env.out)["seed"] == 5);
}

TEST_CASE("subcommands read from stdin when the input is -") {
    const RunResult r = run_shell(std::string("printf '%s' '") + kSpectrumU3 +
                                  "' | \"" + CONTACTIFY_BIN + "\" integrality");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["hbar"] == json::array({"1", "6"}));
}

TEST_CASE("errors surface as JSON with exit code 1") {
    const std::string bad = write_file("bad.json", "{nope");
    const RunResult parse = run_cli("integrality --input " + bad);
    CHECK(parse.code == 1);
    CHECK(json::parse(parse.out)["code"] == "parse_error");

    const RunResult gauge = run_cli("simulate --t1 1.0 --gauge bogus");
    CHECK(gauge.code == 1);
    CHECK(json::parse(gauge.out)["code"] == "parse_error");

    const RunResult tol = run_cli("verify --samples 10 --tol nonsense");
    CHECK(tol.code == 1);
    CHECK(json::parse(tol.out)["code"] == "parse_error");
}
