#pragma once

#include <stdexcept>
#include <string>

namespace critom {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string &msg) : Error("invalid parameters: " + msg) {}
};

struct NonConvergence : Error {
    explicit NonConvergence(const std::string &msg) : Error("solver did not converge: " + msg) {}
};

struct EigenFailure : Error {
    explicit EigenFailure(const std::string &msg) : Error("eigensolver failed: " + msg) {}
};

struct StepUnderflow : Error {
    explicit StepUnderflow(const std::string &msg) : Error("integrator step underflow: " + msg) {}
};

struct NoOscillation : Error {
    explicit NoOscillation(const std::string &msg) : Error("no oscillation detected: " + msg) {}
};

struct TraceLost : Error {
    explicit TraceLost(const std::string &msg) : Error("boundary trace lost: " + msg) {}
};

struct ContinuationStall : Error {
    explicit ContinuationStall(const std::string &msg) : Error("continuation stalled: " + msg) {}
};

struct SingularChiB : Error {
    explicit SingularChiB(const std::string &msg) : Error("singular chi_b: " + msg) {}
};

struct SingularChiF : Error {
    explicit SingularChiF(const std::string &msg) : Error("singular chi_F (no force transduction): " + msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string &msg) : Error("division by zero: " + msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string &msg) : Error("config error: " + msg) {}
};

} // namespace critom
