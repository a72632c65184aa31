#pragma once

#include <stdexcept>
#include <string>

namespace contactify {

/// Error thrown by every operation in this library when an input violates a
/// documented precondition (dimension mismatch, broken structural invariant,
/// ambiguous numerical rank, ...).  The code is a stable machine-readable
/// tag; the CLI maps it into its JSON error object.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Codes in use:
//   dimension_mismatch    operands of different size n
//   invariant_violation   a structural type invariant failed its tolerance
//   tangency_violation    vector not tangent where tangency is required
//   eigenvalue_ambiguity  spectral gap inside the undecidable band
//   rank_ambiguity        singular value inside the undecidable band
//   duplicate_eigenvalue  spectral block list with a repeated value
//   domain_error          value outside an operation's domain
//   not_a_state           negative eigenvalue where a density matrix is needed
//   overflow              exact integer arithmetic exceeded 64-bit range
//   step_rejected         integrator retraction moved a point too far
//   parse_error           malformed JSON/CSV input
//   io_error              filesystem failure

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

} // namespace contactify
