#pragma once

#include <stdexcept>
#include <string>

namespace trendnet {

/// Error categories. Values double as process exit codes in the CLI.
enum class ErrorCode : int {
    io = 2,
    config = 3,
    parse = 4,
    empty_dataset = 5,
    infeasible_window = 6,
    no_convergence = 7,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::io: return "io";
    case ErrorCode::config: return "config";
    case ErrorCode::parse: return "parse";
    case ErrorCode::empty_dataset: return "empty-dataset";
    case ErrorCode::infeasible_window: return "infeasible-window";
    case ErrorCode::no_convergence: return "no-convergence";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when power iteration hits the iteration cap; carries the last
/// L1 residual so callers can report how far from the fixed point it got.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, double residual)
        : Error(ErrorCode::no_convergence, message), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace trendnet
