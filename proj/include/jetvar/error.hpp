#pragma once

#include <stdexcept>
#include <string>

namespace jetvar {

enum class ErrorCode {
    UndeclaredAtom,
    NotDifferentiable,
    ParityMismatch,
    UnboundAtom,
    OddAtomPresent,
    IndexOutOfRange,
    NotProjectable,
    ModelMismatch,
    DegreeZero,
    DegreeOverflow,
    SingularMetric,
    DimensionTooLarge,
    AlgebraMismatch,
    OrderTooHigh,
    UndeclaredParameter,
    TermLimitExceeded,
    DivisionByZero,
    ParseError,
    ValidationError,
    UnknownCommand,
    MissingSection,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Parse failure with a 1-based position in the offending text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(ErrorCode::ParseError, format(message, line, column)),
          detail_(message), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& detail() const { return detail_; }

private:
    static std::string format(const std::string& message, int line, int column);

    std::string detail_;
    int line_;
    int column_;
};

}  // namespace jetvar
