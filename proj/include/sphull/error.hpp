#pragma once

#include <stdexcept>
#include <string>

namespace sphull {

enum class ErrorKind {
    Validation,
    Domain,
    ClassMismatch,
    Moment,
    Pole,
    Quadrature,
    Degeneracy,
    UnsupportedScale,
    InsufficientData,
    NotGumbel,
    Join,
    Io,
    Diagnostic,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double value, double achieved_error)
        : Error(ErrorKind::Quadrature, what), value_(value), achieved_(achieved_error) {}
    double value() const noexcept { return value_; }
    double achieved_error() const noexcept { return achieved_; }

private:
    double value_;
    double achieved_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace sphull
