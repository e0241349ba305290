#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace valgen {

enum class ErrorKind {
    NotSubgroup,
    NotMonic,
    NotAUnit,
    Indeterminate,
    DivisibleByX,
    NotInField,
    SequenceTooShort,
    InvalidSequence,
    ValueMismatch,
    BadParams,
    NotApplicable,
    NonPolynomial,
    NotMonomial,
    DNotPPower,
    Inconsistent,
    Singular,
    NonTermination,
    OrderMismatch,
    AbhyankarViolation,
    PrecisionTooLow,
    Parse,
    Overflow,
};

inline std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::DivisibleByX: return "DivisibleByX";
    case ErrorKind::NotInField: return "NotInField";
    case ErrorKind::SequenceTooShort: return "SequenceTooShort";
    case ErrorKind::InvalidSequence: return "InvalidSequence";
    case ErrorKind::ValueMismatch: return "ValueMismatch";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NonPolynomial: return "NonPolynomial";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::DNotPPower: return "DNotPPower";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::AbhyankarViolation: return "AbhyankarViolation";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Overflow: return "Overflow";
    }
    return "Unknown";
}

/// Every domain failure in the library is reported through this type; the
/// kind is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace valgen
