#include "contactify/serialization.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "contactify/common.hpp"

namespace contactify::io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Value Value::boolean(bool b) {
    Value v;
    v.kind_ = Kind::Bool;
    v.b_ = b;
    return v;
}

Value Value::integer(long long i) {
    Value v;
    v.kind_ = Kind::Int;
    v.i_ = i;
    return v;
}

Value Value::real(double d) {
    Value v;
    v.kind_ = Kind::Real;
    v.d_ = d;
    return v;
}

Value Value::str(std::string s) {
    Value v;
    v.kind_ = Kind::Str;
    v.s_ = std::move(s);
    return v;
}

Value Value::array() {
    Value v;
    v.kind_ = Kind::Array;
    return v;
}

Value Value::object() {
    Value v;
    v.kind_ = Kind::Object;
    return v;
}

Value Value::null() { return Value(); }

Value& Value::push(Value v) {
    if (kind_ != Kind::Array) fail("invariant_violation", "push on non-array");
    items_.push_back(std::move(v));
    return *this;
}

Value& Value::set(std::string key, Value v) {
    if (kind_ != Kind::Object) fail("invariant_violation", "set on non-object");
    fields_.emplace_back(std::move(key), std::move(v));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent) * depth, ' ');
}

} // namespace

void Value::write(std::string& out, int indent, int depth) const {
    switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += b_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(i_); break;
    case Kind::Real: out += format_double(d_); break;
    case Kind::Str: write_escaped(out, s_); break;
    case Kind::Array: {
        if (items_.empty()) {
            out += "[]";
            break;
        }
        out += '[';
        for (size_t i = 0; i < items_.size(); ++i) {
            if (i) out += ',';
            newline_indent(out, indent, depth + 1);
            items_[i].write(out, indent, depth + 1);
        }
        newline_indent(out, indent, depth);
        out += ']';
        break;
    }
    case Kind::Object: {
        if (fields_.empty()) {
            out += "{}";
            break;
        }
        out += '{';
        for (size_t i = 0; i < fields_.size(); ++i) {
            if (i) out += ',';
            newline_indent(out, indent, depth + 1);
            write_escaped(out, fields_[i].first);
            out += indent < 0 ? ":" : ": ";
            fields_[i].second.write(out, indent, depth + 1);
        }
        newline_indent(out, indent, depth);
        out += '}';
        break;
    }
    }
}

std::string Value::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

Value matrix_to_value(const lie::Matrix& m, const std::string& kind) {
    Value v = Value::object();
    v.set("kind", Value::str(kind));
    v.set("n", Value::integer(m.rows()));
    Value re = Value::array();
    Value im = Value::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Value re_row = Value::array();
        Value im_row = Value::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re_row.push(Value::real(m(r, c).real()));
            im_row.push(Value::real(m(r, c).imag()));
        }
        re.push(std::move(re_row));
        im.push(std::move(im_row));
    }
    v.set("re", std::move(re));
    v.set("im", std::move(im));
    return v;
}

namespace {

json parse_or_fail(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("parse_error", "input is not valid JSON");
    return j;
}

lie::Matrix matrix_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("re") || !j.contains("im"))
        fail("parse_error", "matrix JSON needs fields n, re, im");
    const int n = j.at("n").get<int>();
    if (n <= 0) fail("parse_error", "matrix size must be positive");
    const json& re = j.at("re");
    const json& im = j.at("im");
    if (!re.is_array() || !im.is_array() ||
        static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
        fail("parse_error", "re/im must be n arrays of n numbers");
    lie::Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const json& re_row = re.at(r);
        const json& im_row = im.at(r);
        if (!re_row.is_array() || !im_row.is_array() ||
            static_cast<int>(re_row.size()) != n ||
            static_cast<int>(im_row.size()) != n)
            fail("parse_error", "re/im must be n arrays of n numbers");
        for (int c = 0; c < n; ++c)
            m(r, c) = std::complex<double>(re_row.at(c).get<double>(),
                                           im_row.at(c).get<double>());
    }
    return m;
}

long long string_to_ll(const std::string& s) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        fail("parse_error", "not an integer: " + s);
    }
    if (pos != s.size()) fail("parse_error", "not an integer: " + s);
    return v;
}

integrality::Rational rational_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j.at(0).is_string() ||
        !j.at(1).is_string())
        fail("parse_error",
             "rational must be a two-string array [\"num\", \"den\"]");
    return integrality::Rational(string_to_ll(j.at(0).get<std::string>()),
                                 string_to_ll(j.at(1).get<std::string>()));
}

} // namespace

ParsedMatrix parse_matrix_json(const std::string& text) {
    const json j = parse_or_fail(text);
    if (!j.is_object() || !j.contains("kind"))
        fail("parse_error", "matrix JSON needs a kind field");
    ParsedMatrix out;
    out.kind = j.at("kind").get<std::string>();
    if (out.kind != "hermitian" && out.kind != "antihermitian" &&
        out.kind != "unitary")
        fail("parse_error", "unknown matrix kind: " + out.kind);
    out.entries = matrix_from_json(j);
    return out;
}

IntegralityInput parse_integrality_input(const std::string& text) {
    const json j = parse_or_fail(text);
    if (!j.is_object()) fail("parse_error", "expected a JSON object");
    IntegralityInput out;
    if (j.contains("eigenvalues")) {
        const json& eig = j.at("eigenvalues");
        if (!eig.is_array() || eig.empty())
            fail("parse_error", "eigenvalues must be a nonempty array");
        std::vector<int> mult(eig.size(), 1);
        if (j.contains("multiplicities")) {
            const json& jm = j.at("multiplicities");
            if (!jm.is_array() || jm.size() != eig.size())
                fail("parse_error",
                     "multiplicities must match eigenvalues in length");
            for (size_t i = 0; i < jm.size(); ++i) mult[i] = jm.at(i).get<int>();
        }
        std::vector<std::pair<integrality::Rational, int>> pairs;
        for (size_t i = 0; i < eig.size(); ++i)
            pairs.emplace_back(rational_from_json(eig.at(i)), mult[i]);
        out.from_matrix = false;
        out.blocks = integrality::spectral_blocks(std::move(pairs));
        return out;
    }
    if (j.contains("kind")) {
        if (j.at("kind").get<std::string>() != "hermitian")
            fail("parse_error", "integrality input matrix must be hermitian");
        const lie::HermitianMatrix mu(matrix_from_json(j));
        Eigen::SelfAdjointEigenSolver<lie::Matrix> es(mu.raw());
        std::vector<double> eigs(es.eigenvalues().data(),
                                 es.eigenvalues().data() + mu.n());
        out.from_matrix = true;
        out.blocks = integrality::blocks_from_numeric_spectrum(eigs);
        return out;
    }
    fail("parse_error", "expected either eigenvalues or a hermitian matrix");
}

dynamics::HamiltonianOnBase parse_hamiltonian_json(const std::string& text) {
    const json j = parse_or_fail(text);
    if (!j.is_object() || !j.contains("type"))
        fail("parse_error", "hamiltonian spec needs a type field");
    if (j.at("type").get<std::string>() != "linear")
        fail("parse_error", "unknown hamiltonian type");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array() ||
        j.at("coeffs").size() != 3)
        fail("parse_error", "hamiltonian coeffs must be three numbers");
    Eigen::Vector3d c;
    for (int k = 0; k < 3; ++k) c(k) = j.at("coeffs").at(k).get<double>();
    const double offset = j.value("offset", 0.0);
    return dynamics::linear(c, offset);
}

Value to_value(const integrality::Rational& r) {
    Value v = Value::array();
    v.push(Value::str(std::to_string(r.num())));
    v.push(Value::str(std::to_string(r.den())));
    return v;
}

Value to_value(const integrality::IntegralityReport& report) {
    Value v = Value::object();
    v.set("integral", Value::boolean(report.integral));
    if (report.hbar) v.set("hbar", to_value(*report.hbar));
    Value eig = Value::array();
    Value mult = Value::array();
    for (size_t i = 0; i < report.blocks.lambdas.size(); ++i) {
        eig.push(to_value(report.blocks.lambdas[i]));
        mult.push(Value::integer(report.blocks.multiplicities[i]));
    }
    v.set("eigenvalues", std::move(eig));
    v.set("multiplicities", std::move(mult));
    v.set("isotropy_dim", Value::integer(report.isotropy_dim));
    v.set("isotropy_zero_dim", Value::integer(report.isotropy_zero_dim));
    v.set("orbit_dim", Value::integer(report.orbit_dim));
    v.set("contactification_dim", Value::integer(report.contactification_dim));
    v.set("is_quantum_state", Value::boolean(report.is_quantum_state));
    if (report.state_identity_holds)
        v.set("state_identity_holds", Value::boolean(*report.state_identity_holds));
    return v;
}

Value to_value(const orbit::OrbitInfo& info) {
    Value v = Value::object();
    Value spec = Value::array();
    Value mult = Value::array();
    for (size_t i = 0; i < info.spectrum.values.size(); ++i) {
        spec.push(Value::real(info.spectrum.values[i]));
        mult.push(Value::integer(info.spectrum.multiplicities[i]));
    }
    v.set("spectrum", std::move(spec));
    v.set("multiplicities", std::move(mult));
    v.set("isotropy_dim", Value::integer(info.isotropy_dim));
    v.set("orbit_dim", Value::integer(info.orbit_dim));
    return v;
}

Value to_value(const dynamics::ActionValue& action) {
    Value v = Value::object();
    v.set("value", Value::real(action.value));
    v.set("hamiltonian_part", Value::real(action.hamiltonian_part));
    v.set("form_part", Value::real(action.form_part));
    return v;
}

const char* const kTrajectoryCsvHeader = "t,re_z1,im_z1,re_z2,im_z2,x,y,z,Hhat";

void write_trajectory_csv(std::ostream& os, const dynamics::Trajectory& traj,
                          const dynamics::HamiltonianOnBase& H) {
    if (traj.times.size() != traj.states.size())
        fail("dimension_mismatch", "trajectory times/states length mismatch");
    os << kTrajectoryCsvHeader << '\n';
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const contact::CVector& z = traj.states[k].coords();
        if (z.size() != 2)
            fail("dimension_mismatch", "trajectory CSV is for states on S^3");
        const contact::S2Point p = contact::hopf_map(traj.states[k]);
        os << format_double(traj.times[k]) << ','
           << format_double(z(0).real()) << ',' << format_double(z(0).imag())
           << ',' << format_double(z(1).real()) << ','
           << format_double(z(1).imag()) << ',' << format_double(p.coords()(0))
           << ',' << format_double(p.coords()(1)) << ','
           << format_double(p.coords()(2)) << ',' << format_double(H.evaluate(p))
           << '\n';
    }
}

dynamics::Trajectory read_trajectory_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail("parse_error", "empty trajectory CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryCsvHeader)
        fail("parse_error", std::string("trajectory CSV header must be ") +
                                kTrajectoryCsvHeader);
    std::vector<double> times;
    std::vector<contact::SpherePoint> states;
    size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            size_t pos = 0;
            double v = 0;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                fail("parse_error",
                     "row " + std::to_string(row) + ": bad number " + cell);
            }
            if (pos != cell.size())
                fail("parse_error",
                     "row " + std::to_string(row) + ": bad number " + cell);
            cols.push_back(v);
        }
        if (cols.size() != 9)
            fail("parse_error",
                 "row " + std::to_string(row) + ": expected 9 columns, got " +
                     std::to_string(cols.size()));
        times.push_back(cols[0]);
        contact::CVector z(2);
        z << std::complex<double>(cols[1], cols[2]),
            std::complex<double>(cols[3], cols[4]);
        contact::SpherePoint x(z);
        const contact::S2Point p = contact::hopf_map(x);
        const Eigen::Vector3d file_p(cols[5], cols[6], cols[7]);
        if ((p.coords() - file_p).norm() > 1e-12)
            fail("parse_error", "row " + std::to_string(row) +
                                    ": x,y,z columns do not match the state");
        states.push_back(std::move(x));
    }
    if (times.size() < 2)
        fail("parse_error", "trajectory CSV needs at least two samples");
    return dynamics::assemble_trajectory(std::move(times), std::move(states),
                                         dynamics::GaugeChoice::orthogonal());
}

} // namespace contactify::io
