#pragma once

#include <array>
#include <charconv>
#include <stdexcept>
#include <string>

namespace negacopula {

/// Shortest text that round-trips `x`, for error messages.
inline std::string describe(double x) {
    std::array<char, 32> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), result.ptr);
}

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Fewer observations than the operation needs.
class InsufficientData : public DomainError {
public:
    using DomainError::DomainError;
};

/// Zero, negative or non-finite value passed to a positive-support fit.
class NonPositiveData : public DomainError {
public:
    using DomainError::DomainError;
};

/// A column has no rank variability.
class ConstantColumn : public DomainError {
public:
    using DomainError::DomainError;
};

/// The empirical dependence is non-negative; C_theta only models negative dependence.
class PositiveDependence : public Error {
public:
    explicit PositiveDependence(double measure)
        : Error("empirical rank correlation " + describe(measure) +
                " is not negative; the copula cannot represent it"),
          measure_(measure) {}

    double measure() const noexcept { return measure_; }

private:
    double measure_;
};

/// An iterative fit stopped without meeting its tolerance.
class FailedConvergence : public Error {
public:
    FailedConvergence(const std::string& what, double last_iterate, double gradient_norm)
        : Error(what + " (last iterate " + describe(last_iterate) +
                ", gradient norm " + describe(gradient_norm) + ")"),
          last_iterate_(last_iterate),
          gradient_norm_(gradient_norm) {}

    double last_iterate() const noexcept { return last_iterate_; }
    double gradient_norm() const noexcept { return gradient_norm_; }

private:
    double last_iterate_;
    double gradient_norm_;
};

}  // namespace negacopula
