#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cancermatch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ValidationErrorKind {
    NegativeIncome,
    RiskOutOfRange,
    UnknownState,
    DuplicateId,
    BasicLaboratoryExcluded,
    NonPositiveCost,
    NegativeBeds,
    UnknownCenterType,
};

const char* to_string(ValidationErrorKind kind);

class ValidationError : public Error {
public:
    ValidationError(ValidationErrorKind kind, const std::string& detail)
        : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

    ValidationErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ValidationErrorKind kind_;
    std::string detail_;
};

// Malformed input text. line is 1-based and counts the header.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& detail)
        : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Internal consistency check failed; always an engine bug.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class NoEligiblePatients : public Error {
public:
    NoEligiblePatients() : Error("no eligible patients to form a round") {}
};

class NoStableMatchingFound : public Error {
public:
    using Error::Error;
};

}  // namespace cancermatch
