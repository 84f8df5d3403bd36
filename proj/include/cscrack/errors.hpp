#pragma once

#include <stdexcept>
#include <string>

namespace cscrack {

// Three families, each mapped to its own CLI exit status.
enum class ErrorKind { Config, Domain, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct MissingInput : Error {
    explicit MissingInput(const std::string& w) : Error(ErrorKind::Config, w) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
// Point lies within the cut-proximity tolerance of a branch cut.
struct OnCutError : Error {
    explicit OnCutError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
// m = 0: the dynamic kernel is 0/0, callers must use the stationary-crack route.
struct QuasiStaticPath : Error {
    explicit QuasiStaticPath(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct ContourOnCut : Error {
    explicit ContourOnCut(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& w) : Error(ErrorKind::Numerical, w) {}
};
struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};
struct NonRealResult : NumericalError {
    using NumericalError::NumericalError;
};
struct NoSignChange : NumericalError {
    using NumericalError::NumericalError;
};
struct NoRoot : NumericalError {
    using NumericalError::NumericalError;
};
struct AngleDiscontinuity : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace cscrack
