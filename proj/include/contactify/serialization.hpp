#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "contactify/dynamics.hpp"
#include "contactify/integrality.hpp"
#include "contactify/orbit.hpp"

namespace contactify::io {

/// %.17g rendering: enough digits to reproduce the double exactly, and a
/// fixed choice of them, so identical runs emit identical bytes.
std::string format_double(double v);

/// Minimal JSON value for output.  Object keys keep insertion order and
/// doubles go through format_double; the emitted bytes are a pure function
/// of the content.  Input parsing lives elsewhere, on a full JSON library.
class Value {
public:
    static Value boolean(bool b);
    static Value integer(long long v);
    static Value real(double v);
    static Value str(std::string s);
    static Value array();
    static Value object();
    static Value null();

    Value& push(Value v);                      // arrays
    Value& set(std::string key, Value v);      // objects

    std::string dump(int indent = 2) const;

private:
    enum class Kind { Null, Bool, Int, Real, Str, Array, Object };
    Kind kind_ = Kind::Null;
    bool b_ = false;
    long long i_ = 0;
    double d_ = 0.0;
    std::string s_;
    std::vector<Value> items_;
    std::vector<std::pair<std::string, Value>> fields_;

    void write(std::string& out, int indent, int depth) const;
};

/// Matrix <-> JSON.  Schema: {"kind": "hermitian"|"antihermitian"|"unitary",
/// "n": int, "re": [[...]], "im": [[...]]} with row-major entry arrays.
Value matrix_to_value(const lie::Matrix& m, const std::string& kind);
struct ParsedMatrix {
    std::string kind;
    lie::Matrix entries;
};
ParsedMatrix parse_matrix_json(const std::string& text);

/// Input for the integrality computation: either explicit rational blocks
/// {"eigenvalues": [["num","den"], ...], "multiplicities": [...]} or a
/// Hermitian matrix (see parse_matrix_json), whose spectrum is rationalized.
struct IntegralityInput {
    bool from_matrix;
    integrality::SpectralBlocks blocks;
};
IntegralityInput parse_integrality_input(const std::string& text);

/// Hamiltonian spec {"type": "linear", "coeffs": [a, b, c], "offset": d}.
dynamics::HamiltonianOnBase parse_hamiltonian_json(const std::string& text);

Value to_value(const integrality::Rational& r);
Value to_value(const integrality::IntegralityReport& report);
Value to_value(const orbit::OrbitInfo& info);
Value to_value(const dynamics::ActionValue& action);

/// Trajectory CSV with the fixed header
/// t,re_z1,im_z1,re_z2,im_z2,x,y,z,Hhat
/// The x,y,z and Hhat columns are recomputed from the states on write, so a
/// read-write cycle reproduces the file byte for byte.
extern const char* const kTrajectoryCsvHeader;
void write_trajectory_csv(std::ostream& os, const dynamics::Trajectory& traj,
                          const dynamics::HamiltonianOnBase& H);
dynamics::Trajectory read_trajectory_csv(std::istream& is);

} // namespace contactify::io
