#pragma once

#include <stdexcept>
#include <string>

namespace sobogeo {

// Error taxonomy. The numeric code doubles as the CLI exit status:
//   2 = invalid input / configuration, 3 = numerical rejection, 4 = I/O.
enum class ErrorCode : int {
    invalid_input = 2,
    numerical = 3,
    io = 4,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string kind, const std::string& message)
        : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& kind() const noexcept { return kind_; }

  private:
    ErrorCode code_;
    std::string kind_;
};

struct InvalidGridError : Error {
    explicit InvalidGridError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "invalid-grid", msg) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "dimension-mismatch", msg) {}
};

struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "invalid-argument", msg) {}
};

struct InvalidSymbolError : Error {
    explicit InvalidSymbolError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "invalid-symbol", msg) {}
};

struct InvalidDiffeoError : Error {
    explicit InvalidDiffeoError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "invalid-diffeo", msg) {}
};

struct NearDegenerateDiffeoError : Error {
    explicit NearDegenerateDiffeoError(const std::string& msg)
        : Error(ErrorCode::numerical, "near-degenerate-diffeo", msg) {}
};

struct FlowDegenerateError : Error {
    FlowDegenerateError(const std::string& msg, double time)
        : Error(ErrorCode::numerical, "flow-degenerate", msg), failure_time(time) {}
    double failure_time;
};

struct DegenerateCurveError : Error {
    explicit DegenerateCurveError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "degenerate-curve", msg) {}
};

struct BandError : Error {
    explicit BandError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "band", msg) {}
};

struct GeodesicLeftChartError : Error {
    GeodesicLeftChartError(const std::string& msg, double time)
        : Error(ErrorCode::numerical, "geodesic-left-chart", msg), failure_time(time) {}
    double failure_time;
};

struct IntegratorAccuracyError : Error {
    explicit IntegratorAccuracyError(const std::string& msg)
        : Error(ErrorCode::numerical, "integrator-accuracy", msg) {}
};

struct PossiblyConjugateError : Error {
    explicit PossiblyConjugateError(const std::string& msg)
        : Error(ErrorCode::numerical, "possibly-conjugate", msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg)
        : Error(ErrorCode::invalid_input, "config", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg)
        : Error(ErrorCode::io, "io", msg) {}
};

}  // namespace sobogeo
