#pragma once

#include <stdexcept>
#include <string>

namespace padicr {

struct FieldMismatch : std::runtime_error {
    explicit FieldMismatch(const std::string& m) : std::runtime_error("FieldMismatch: " + m) {}
};

struct DivisionByZeroToPrecision : std::runtime_error {
    explicit DivisionByZeroToPrecision(const std::string& m)
        : std::runtime_error("DivisionByZeroToPrecision: " + m) {}
};

// Raised whenever a valuation or comparison cannot be decided at the working
// precision.  Norm engines never guess.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& m)
        : std::runtime_error("PrecisionExhausted: " + m) {}
};

struct UnsupportedField : std::runtime_error {
    explicit UnsupportedField(const std::string& m) : std::runtime_error("UnsupportedField: " + m) {}
};

struct UnboundedSet : std::runtime_error {
    explicit UnboundedSet(const std::string& m) : std::runtime_error("UnboundedSet: " + m) {}
};

struct IndexOrderViolation : std::runtime_error {
    explicit IndexOrderViolation(const std::string& m)
        : std::runtime_error("IndexOrderViolation: " + m) {}
};

struct IndexTooLarge : std::runtime_error {
    explicit IndexTooLarge(const std::string& m) : std::runtime_error("IndexTooLarge: " + m) {}
};

struct DegreeTooHigh : std::runtime_error {
    explicit DegreeTooHigh(const std::string& m) : std::runtime_error("DegreeTooHigh: " + m) {}
};

struct DepthInsufficient : std::runtime_error {
    explicit DepthInsufficient(const std::string& m)
        : std::runtime_error("DepthInsufficient: " + m) {}
};

struct NotTopDegree : std::runtime_error {
    explicit NotTopDegree(const std::string& m) : std::runtime_error("NotTopDegree: " + m) {}
};

struct InvalidParameters : std::runtime_error {
    explicit InvalidParameters(const std::string& m)
        : std::runtime_error("InvalidParameters: " + m) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error("ParseError: " + m) {}
};

}  // namespace padicr
