#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the domain of an operation (bad geometry, r < 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series did not reach its tolerance within the configured term cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, long terms)
        : std::runtime_error(what), terms_(terms) {}
    long terms() const noexcept { return terms_; }

private:
    long terms_;
};

/// A numerical integral's error estimate exceeded the requested accuracy.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double error)
        : std::runtime_error(what), value_(value), error_(error) {}
    double value() const noexcept { return value_; }
    double error() const noexcept { return error_; }

private:
    double value_;
    double error_;
};

/// The rational-model least-squares fit failed to converge.
class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

}  // namespace casimir
