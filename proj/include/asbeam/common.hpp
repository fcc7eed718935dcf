#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace asbeam {

using Complex = std::complex<double>;

// ---- error hierarchy ------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested (q, omega) point lies outside the domain of the dispersion
// relation (f would be negative, or inside the exact-kind boundary shell).
struct OutOfDomainError : Error {
  using Error::Error;
};

struct InvalidArgumentError : Error {
  using Error::Error;
};

// Kernel kind paired with a dispersion relation it was not derived from.
struct KindMismatchError : Error {
  using Error::Error;
};

// Bisection could not bracket a root of f.
struct NoBoundaryError : Error {
  using Error::Error;
};

// A k-space node whose zeta cannot be reached by f(q, .).
struct UnmappableNodeError : Error {
  using Error::Error;
};

// ---- small real 3-vectors --------------------------------------------------

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// ---- deterministic reductions ----------------------------------------------

// Pairwise summation: deterministic association order independent of any
// threading, and better rounding than a running sum.
double pairwise_sum(const std::vector<double>& terms);

// ---- deterministic uniform variates ----------------------------------------

// std::uniform_real_distribution is implementation-defined; this mapping is
// not, so seeded sequences are reproducible everywhere.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  // uniform in [0, 1)
  double next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

  double in_range(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::uint64_t state_;
};

// ---- float formatting -------------------------------------------------------

// 17 significant digits: parses back to the identical double.
std::string format_double(double v);

}  // namespace asbeam
