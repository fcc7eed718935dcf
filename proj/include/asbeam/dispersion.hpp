#pragma once

#include <functional>
#include <optional>

#include "asbeam/common.hpp"
#include "asbeam/units.hpp"

namespace asbeam {

enum class DispersionKind { TimeIndependentParaxial, TimeDependentParaxial, Exact, Custom };

const char* kind_name(DispersionKind kind);

// The longitudinal wavenumber zeta = f(q, omega) and its geometry.
//
// Built-in branches (q and omega scalar, q = |q|):
//   TimeIndependentParaxial:  f = (omega/c) (1 - q^2 c^2 / (2 omega^2))
//   TimeDependentParaxial:    f = (omega/c) (1 - q^2 c^2 / (4 omega^2))
//   Exact:                    f = (omega/c) sqrt(1 - q^2 c^2 / omega^2)
//
// Custom relations must be monotonically increasing in omega on their domain
// (validated by sampling) and radially decreasing in q; the latter is a
// contract of this artifact, needed so that the domain C_q(f, omega) is a
// disk that masking can represent.
struct DispersionRelation {
  DispersionKind kind = DispersionKind::TimeIndependentParaxial;
  UnitSystem units;
  std::function<double(double, double)> custom_f;        // (q, omega) -> zeta
  std::function<double(double, double)> custom_dfdomega; // optional analytic Jacobian

  static DispersionRelation ti_paraxial(const UnitSystem& u);
  static DispersionRelation td_paraxial(const UnitSystem& u);
  static DispersionRelation exact(const UnitSystem& u);
  static DispersionRelation custom(const UnitSystem& u,
                                   std::function<double(double, double)> f,
                                   std::function<double(double, double)> dfdomega = nullptr);
};

// Exact-kind nodes with q > (1 - kExactBoundaryShell) * omega / c are treated
// as out of domain: the Jacobian diverges on the boundary itself.
constexpr double kExactBoundaryShell = 1e-6;

bool in_domain(const DispersionRelation& rel, double q, double omega);

// zeta = f(q, omega); throws OutOfDomainError rather than returning a
// negative value.
double f_value(const DispersionRelation& rel, double q, double omega);

// df/domega. Custom relations without an analytic derivative use a central
// difference with relative step 1e-6 * omega.
double jacobian(const DispersionRelation& rel, double q, double omega);

// c |k| = c sqrt(q^2 + f^2) through the per-kind closed form:
// TI: omega sqrt(1 + theta^4), TD: omega (1 + eta^2), Exact: omega.
double plane_wave_frequency(const DispersionRelation& rel, double q, double omega);

// Radius at which f(., omega) = 0 (closed form for built-ins, bisection to
// relative 1e-12 for Custom).
double q_max(const DispersionRelation& rel, double omega);

// Lower end of I_omega(f, q); inverse of q_max.
double omega_min(const DispersionRelation& rel, double q);

// Solve zeta = f(q, omega) for omega (closed forms for built-ins, bisection
// for Custom). Throws UnmappableNodeError when no root exists.
double omega_from_zeta(const DispersionRelation& rel, double q, double zeta);

struct MonotonicityCheck {
  bool monotone = true;
  std::optional<double> first_violation;
};

// Samples df/domega at n_samples points of [omega_lo, omega_hi] that lie in
// the domain; reports the first omega where it fails to be positive.
MonotonicityCheck validate_monotone(const DispersionRelation& rel, double q,
                                    double omega_lo, double omega_hi, int n_samples);

}  // namespace asbeam
