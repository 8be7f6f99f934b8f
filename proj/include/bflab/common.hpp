#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace bflab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Precondition violations by the caller.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerics that failed to produce a trustworthy number.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double pstar(double p) { return p >= 2.0 ? p : p / (p - 1.0); }

}  // namespace bflab
