#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contactify/common.hpp"
#include "contactify/contact.hpp"
#include "contactify/dynamics.hpp"
#include "contactify/integrality.hpp"
#include "contactify/orbit.hpp"
#include "contactify/serialization.hpp"
#include "contactify/verify.hpp"

namespace {

using namespace contactify;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) fail("io_error", "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// "linear-z" or a path to {"type": "linear", "coeffs": [a,b,c], "offset": d}.
dynamics::HamiltonianOnBase parse_hamiltonian(const std::string& spec) {
    if (spec == "linear-z") return dynamics::linear_z();
    return io::parse_hamiltonian_json(read_input(spec));
}

dynamics::GaugeChoice parse_gauge(const std::string& spec) {
    if (spec == "orthogonal") return dynamics::GaugeChoice::orthogonal();
    const std::string prefix = "constant:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string tail = spec.substr(prefix.size());
        size_t pos = 0;
        double c = 0.0;
        try {
            c = std::stod(tail, &pos);
        } catch (const std::exception&) {
            fail("parse_error", "bad gauge constant: " + tail);
        }
        if (pos != tail.size()) fail("parse_error", "bad gauge constant: " + tail);
        return dynamics::GaugeChoice::constant(c);
    }
    fail("parse_error", "gauge must be orthogonal or constant:<value>");
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    const char* env = std::getenv("CONTACTIFY_SEED");
    if (env == nullptr || *env == '\0') return cli_seed;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        fail("parse_error", std::string("CONTACTIFY_SEED is not an integer: ") + env);
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) fail("io_error", "cannot open " + path);
    f << content;
    if (!f) fail("io_error", "write failed for " + path);
}

int run(int argc, char** argv) {
    CLI::App app{"Coadjoint-orbit integrality tests and sphere contact dynamics"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    app.add_option("--seed", seed,
                   "RNG seed (CONTACTIFY_SEED overrides when set)");

    // integrality
    auto* cmd_int = app.add_subcommand(
        "integrality",
        "Compactness test for a rational spectrum or Hermitian matrix");
    std::string int_input = "-";
    cmd_int->add_option("--input", int_input, "JSON input path, - for stdin");

    // orbit-info
    auto* cmd_orb = app.add_subcommand(
        "orbit-info", "Spectrum clusters and orbit dimensions of a matrix");
    std::string orb_input = "-";
    cmd_orb->add_option("--input", orb_input, "JSON input path, - for stdin");

    // simulate
    auto* cmd_sim = app.add_subcommand(
        "simulate", "Integrate the contactified dynamics on the 3-sphere");
    std::vector<double> x0{1.0, 0.0, 0.0, 0.0};
    std::string ham_spec = "linear-z";
    std::string gauge_spec = "orthogonal";
    std::string sim_out = "-";
    double t1 = 0.0, dt = 1e-3;
    cmd_sim->add_option("--x0", x0,
                        "initial state re_z1 im_z1 re_z2 im_z2 (renormalized)")
        ->expected(4);
    cmd_sim->add_option("--t1", t1, "final time")->required()
        ->check(CLI::PositiveNumber);
    cmd_sim->add_option("--dt", dt, "requested step (rounded to divide t1)")
        ->check(CLI::PositiveNumber);
    cmd_sim->add_option("--hamiltonian", ham_spec,
                        "linear-z or a JSON spec path");
    cmd_sim->add_option("--gauge", gauge_spec, "orthogonal or constant:<c>");
    cmd_sim->add_option("--out", sim_out, "CSV output path, - for stdout");

    // action
    auto* cmd_act = app.add_subcommand(
        "action", "Action functional of a sampled trajectory CSV");
    std::string act_input = "-";
    std::string act_ham = "linear-z";
    cmd_act->add_option("--input", act_input, "CSV input path, - for stdin");
    cmd_act->add_option("--hamiltonian", act_ham,
                        "linear-z or a JSON spec path");

    // verify
    auto* cmd_ver = app.add_subcommand(
        "verify", "Randomized property suites over every module");
    int samples = 1000;
    std::vector<std::string> suites;
    std::vector<std::string> tol_specs;
    cmd_ver->add_option("--samples", samples, "samples per suite")
        ->check(CLI::PositiveNumber);
    cmd_ver->add_option("--suite", suites,
                        "restrict to named suites (repeatable)");
    cmd_ver->add_option("--tol", tol_specs,
                        "loosen one check: name=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    if (cmd_int->parsed()) {
        const io::IntegralityInput in =
            io::parse_integrality_input(read_input(int_input));
        const integrality::IntegralityReport report =
            integrality::build_report(in.blocks);
        std::cout << io::to_value(report).dump();
        return 0;
    }

    if (cmd_orb->parsed()) {
        const io::ParsedMatrix pm = io::parse_matrix_json(read_input(orb_input));
        if (pm.kind != "hermitian")
            fail("parse_error", "orbit-info expects a hermitian matrix");
        const orbit::OrbitInfo info =
            orbit::orbit_info(lie::HermitianMatrix(pm.entries));
        std::cout << io::to_value(info).dump();
        return 0;
    }

    if (cmd_sim->parsed()) {
        contact::CVector z(2);
        z << lie::Complex(x0[0], x0[1]), lie::Complex(x0[2], x0[3]);
        if (z.norm() < 1e-12)
            fail("domain_error", "initial state must be nonzero");
        z.normalize();
        const dynamics::HamiltonianOnBase H = parse_hamiltonian(ham_spec);
        const dynamics::Trajectory traj = dynamics::el_flow(
            H, contact::SpherePoint(z), t1, dt, parse_gauge(gauge_spec));
        std::ostringstream csv;
        io::write_trajectory_csv(csv, traj, H);
        write_output(sim_out, csv.str());
        return 0;
    }

    if (cmd_act->parsed()) {
        std::istringstream csv(read_input(act_input));
        const dynamics::Trajectory traj = io::read_trajectory_csv(csv);
        const dynamics::HamiltonianOnBase H = parse_hamiltonian(act_ham);
        std::cout << io::to_value(dynamics::action_functional(traj, H)).dump();
        return 0;
    }

    if (cmd_ver->parsed()) {
        verify::Tolerances tols;
        for (const std::string& spec : tol_specs) {
            const size_t eq = spec.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
                fail("parse_error", "tolerance override must be name=value");
            size_t pos = 0;
            double v = 0.0;
            const std::string tail = spec.substr(eq + 1);
            try {
                v = std::stod(tail, &pos);
            } catch (const std::exception&) {
                fail("parse_error", "bad tolerance value: " + tail);
            }
            if (pos != tail.size())
                fail("parse_error", "bad tolerance value: " + tail);
            tols[spec.substr(0, eq)] = v;
        }
        const std::uint64_t s = effective_seed(seed);

        std::vector<verify::SuiteResult> results;
        auto wanted = [&suites](const std::string& name) {
            if (suites.empty()) return true;
            for (const std::string& s : suites)
                if (s == name) return true;
            return false;
        };
        if (wanted("lie-core"))
            results.push_back(verify::run_lie_core(samples, s, tols));
        if (wanted("orbit")) results.push_back(verify::run_orbit(samples, s, tols));
        if (wanted("integrality"))
            results.push_back(verify::run_integrality(samples, s, tols));
        if (wanted("contact"))
            results.push_back(verify::run_contact(samples, s, tols));
        if (wanted("dynamics"))
            results.push_back(verify::run_dynamics(samples, s, tols));
        if (results.empty())
            fail("domain_error", "no suite matches the --suite filter");

        bool pass = true;
        io::Value arr = io::Value::array();
        for (const verify::SuiteResult& r : results) {
            pass = pass && r.pass;
            io::Value row = io::Value::object();
            row.set("suite", io::Value::str(r.suite));
            row.set("samples", io::Value::integer(r.samples));
            row.set("max_error", io::Value::real(r.max_error));
            row.set("worst", io::Value::str(r.worst));
            row.set("pass", io::Value::boolean(r.pass));
            arr.push(std::move(row));
        }
        io::Value out = io::Value::object();
        out.set("seed", io::Value::integer(static_cast<long long>(s)));
        out.set("suites", std::move(arr));
        out.set("pass", io::Value::boolean(pass));
        std::cout << out.dump();
        return pass ? 0 : 2;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const contactify::Error& e) {
        contactify::io::Value err = contactify::io::Value::object();
        err.set("code", contactify::io::Value::str(e.code()));
        err.set("message", contactify::io::Value::str(e.what()));
        std::cout << err.dump();
        return 1;
    } catch (const std::exception& e) {
        contactify::io::Value err = contactify::io::Value::object();
        err.set("code", contactify::io::Value::str("internal_error"));
        err.set("message", contactify::io::Value::str(e.what()));
        std::cout << err.dump();
        return 1;
    }
}
