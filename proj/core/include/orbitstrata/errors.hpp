#pragma once

#include <stdexcept>
#include <string>

namespace orbitstrata {

/// Library-wide error with a machine-readable kind.
///
/// Kinds group into the CLI exit-code classes: input/usage problems,
/// verification failures, and exceeded internal caps.
class Error : public std::runtime_error {
public:
    enum class Kind {
        // exactalg
        DivisionByZero,
        MixedField,
        ContextMismatch,
        UnknownVariable,
        IncompleteAssignment,
        ZeroDivisor,
        NotSquare,
        Dimension,
        // groups
        CapExceeded,
        NotASubgroup,
        NotStable,
        NonRationalBasis,
        // invariants / parametrize
        NotAnInvariantBasis,
        LambdaNotGenerating,
        // strata
        NoConvergence,
        EmptySample,
        // io
        Syntax,
        UnknownIdentifier,
        NegativeExponent,
        Schema,
        Validation,
        Io,
        // pipeline
        VerificationFailed,
        Internal,
    };

    Error(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

inline const char* to_string(Error::Kind k) {
    switch (k) {
        case Error::Kind::DivisionByZero: return "DivisionByZero";
        case Error::Kind::MixedField: return "MixedField";
        case Error::Kind::ContextMismatch: return "ContextMismatch";
        case Error::Kind::UnknownVariable: return "UnknownVariable";
        case Error::Kind::IncompleteAssignment: return "IncompleteAssignment";
        case Error::Kind::ZeroDivisor: return "ZeroDivisor";
        case Error::Kind::NotSquare: return "NotSquare";
        case Error::Kind::Dimension: return "Dimension";
        case Error::Kind::CapExceeded: return "CapExceeded";
        case Error::Kind::NotASubgroup: return "NotASubgroup";
        case Error::Kind::NotStable: return "NotStable";
        case Error::Kind::NonRationalBasis: return "NonRationalBasis";
        case Error::Kind::NotAnInvariantBasis: return "NotAnInvariantBasis";
        case Error::Kind::LambdaNotGenerating: return "LambdaNotGenerating";
        case Error::Kind::NoConvergence: return "NoConvergence";
        case Error::Kind::EmptySample: return "EmptySample";
        case Error::Kind::Syntax: return "Syntax";
        case Error::Kind::UnknownIdentifier: return "UnknownIdentifier";
        case Error::Kind::NegativeExponent: return "NegativeExponent";
        case Error::Kind::Schema: return "Schema";
        case Error::Kind::Validation: return "Validation";
        case Error::Kind::Io: return "Io";
        case Error::Kind::VerificationFailed: return "VerificationFailed";
        case Error::Kind::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace orbitstrata
