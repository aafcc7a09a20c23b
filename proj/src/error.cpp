#include "jetvar/error.hpp"

namespace jetvar {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::UndeclaredAtom: return "UndeclaredAtom";
    case ErrorCode::NotDifferentiable: return "NotDifferentiable";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::UnboundAtom: return "UnboundAtom";
    case ErrorCode::OddAtomPresent: return "OddAtomPresent";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotProjectable: return "NotProjectable";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::OrderTooHigh: return "OrderTooHigh";
    case ErrorCode::UndeclaredParameter: return "UndeclaredParameter";
    case ErrorCode::TermLimitExceeded: return "TermLimitExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::MissingSection: return "MissingSection";
    }
    return "Error";
}

std::string ParseError::format(const std::string& message, int line, int column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

}  // namespace jetvar
