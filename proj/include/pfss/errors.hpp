/**
 * @file errors.hpp
 * @brief Error taxonomy for the pfss library.
 *
 * Every contract violation raises pfss::Error carrying a machine-readable
 * ErrorKind (stable identifier, used verbatim in CLI error JSON) plus a
 * human-readable message.
 */
#ifndef PFSS_ERRORS_HPP
#define PFSS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfss {

enum class ErrorKind {
    DivisionByZero,         ///< division or inversion of a zero field element
    FieldMismatch,          ///< operands from incompatible field contexts
    NotIrreducible,         ///< modulus polynomial fails the irreducibility test
    ZeroElement,            ///< zero element where a unit is required (order, roots)
    ExtensionBoundExceeded, ///< required field extension exceeds the configured cap
    ZeroPolynomial,         ///< zero polynomial where a nonzero one is required
    SingularPolynomial,     ///< polynomial with zero constant term where x must not divide
    SingularMatrix,         ///< singular matrix where an invertible one is required
    BadRange,               ///< index or size out of range
    StepCapExceeded,        ///< simulation exceeded its step cap without closing
    StateSpaceTooLarge,     ///< exhaustive enumeration would exceed the state cap
    RootMismatch,           ///< supplied matrix is not an N-th root of the monodromy
    NotAnExtension,         ///< target context is not an extension of the source context
    WiringError,            ///< register wiring references a missing master cell
    NotPeriodic,            ///< master register never returns to its initial state
    SingularSystem,         ///< some step matrix of the periodic system is singular
    MissingFloquet,         ///< operation requires Floquet data that was not supplied
    VerificationFailed,     ///< an internal consistency re-check failed
    ParseError,             ///< malformed input (JSON schema, encodings, CLI values)
};

/// Stable identifier string for an ErrorKind (used in CLI error JSON).
constexpr std::string_view error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::NotIrreducible: return "NotIrreducible";
        case ErrorKind::ZeroElement: return "ZeroElement";
        case ErrorKind::ExtensionBoundExceeded: return "ExtensionBoundExceeded";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::SingularPolynomial: return "SingularPolynomial";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::BadRange: return "BadRange";
        case ErrorKind::StepCapExceeded: return "StepCapExceeded";
        case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
        case ErrorKind::RootMismatch: return "RootMismatch";
        case ErrorKind::NotAnExtension: return "NotAnExtension";
        case ErrorKind::WiringError: return "WiringError";
        case ErrorKind::NotPeriodic: return "NotPeriodic";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::MissingFloquet: return "MissingFloquet";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Throw helper keeping call sites one line long.
[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

} // namespace pfss

#endif // PFSS_ERRORS_HPP
