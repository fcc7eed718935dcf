#include "asbeam/dispersion.hpp"

#include <cmath>

namespace asbeam {

namespace {

std::string point_str(double q, double omega) {
  return "(q = " + format_double(q) + ", omega = " + format_double(omega) + ")";
}

void require_inputs(double q, double omega) {
  if (!(omega > 0.0)) throw InvalidArgumentError("omega must be positive");
  if (q < 0.0) throw InvalidArgumentError("q must be nonnegative");
}

// raw f without domain checks; built-ins only
double raw_f(const DispersionRelation& rel, double q, double omega) {
  const double c = rel.units.c;
  const double u = q * c / omega;
  switch (rel.kind) {
    case DispersionKind::TimeIndependentParaxial:
      return (omega / c) * (1.0 - 0.5 * u * u);
    case DispersionKind::TimeDependentParaxial:
      return (omega / c) * (1.0 - 0.25 * u * u);
    case DispersionKind::Exact:
      return (omega / c) * std::sqrt(std::max(0.0, 1.0 - u * u));
    case DispersionKind::Custom:
      return rel.custom_f(q, omega);
  }
  return 0.0;
}

// Grow hi until pred(hi) flips sign relative to pred(lo); then bisect.
// pred must be monotone along the search direction.
double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   double rel_tol) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw NoBoundaryError("bisection bracket does not change sign");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* kind_name(DispersionKind kind) {
  switch (kind) {
    case DispersionKind::TimeIndependentParaxial: return "ti_paraxial";
    case DispersionKind::TimeDependentParaxial: return "td_paraxial";
    case DispersionKind::Exact: return "exact";
    case DispersionKind::Custom: return "custom";
  }
  return "?";
}

DispersionRelation DispersionRelation::ti_paraxial(const UnitSystem& u) {
  u.validate();
  return DispersionRelation{DispersionKind::TimeIndependentParaxial, u, nullptr, nullptr};
}

DispersionRelation DispersionRelation::td_paraxial(const UnitSystem& u) {
  u.validate();
  return DispersionRelation{DispersionKind::TimeDependentParaxial, u, nullptr, nullptr};
}

DispersionRelation DispersionRelation::exact(const UnitSystem& u) {
  u.validate();
  return DispersionRelation{DispersionKind::Exact, u, nullptr, nullptr};
}

DispersionRelation DispersionRelation::custom(const UnitSystem& u,
                                              std::function<double(double, double)> f,
                                              std::function<double(double, double)> dfdomega) {
  u.validate();
  if (!f) throw InvalidArgumentError("custom dispersion requires f(q, omega)");
  return DispersionRelation{DispersionKind::Custom, u, std::move(f), std::move(dfdomega)};
}

bool in_domain(const DispersionRelation& rel, double q, double omega) {
  if (!(omega > 0.0) || q < 0.0) return false;
  const double c = rel.units.c;
  switch (rel.kind) {
    case DispersionKind::TimeIndependentParaxial:
      return q * c <= std::sqrt(2.0) * omega;
    case DispersionKind::TimeDependentParaxial:
      return q * c <= 2.0 * omega;
    case DispersionKind::Exact:
      return q * c <= (1.0 - kExactBoundaryShell) * omega;
    case DispersionKind::Custom: {
      double f = rel.custom_f(q, omega);
      return std::isfinite(f) && f >= 0.0;
    }
  }
  return false;
}

double f_value(const DispersionRelation& rel, double q, double omega) {
  require_inputs(q, omega);
  if (!in_domain(rel, q, omega))
    throw OutOfDomainError("f(q, omega) undefined outside C_q at " + point_str(q, omega));
  return raw_f(rel, q, omega);
}

double jacobian(const DispersionRelation& rel, double q, double omega) {
  require_inputs(q, omega);
  if (!in_domain(rel, q, omega))
    throw OutOfDomainError("df/domega undefined outside C_q at " + point_str(q, omega));
  const double c = rel.units.c;
  switch (rel.kind) {
    case DispersionKind::TimeIndependentParaxial: {
      const double theta = q * c / (std::sqrt(2.0) * omega);
      return (1.0 + theta * theta) / c;
    }
    case DispersionKind::TimeDependentParaxial: {
      const double eta = q * c / (2.0 * omega);
      return (1.0 + eta * eta) / c;
    }
    case DispersionKind::Exact: {
      const double u = q * c / omega;
      return 1.0 / (c * std::sqrt(1.0 - u * u));
    }
    case DispersionKind::Custom: {
      if (rel.custom_dfdomega) return rel.custom_dfdomega(q, omega);
      const double h = 1e-6 * omega;
      return (rel.custom_f(q, omega + h) - rel.custom_f(q, omega - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

double plane_wave_frequency(const DispersionRelation& rel, double q, double omega) {
  require_inputs(q, omega);
  if (!in_domain(rel, q, omega))
    throw OutOfDomainError("c|k| undefined outside C_q at " + point_str(q, omega));
  const double c = rel.units.c;
  switch (rel.kind) {
    case DispersionKind::TimeIndependentParaxial: {
      const double theta = q * c / (std::sqrt(2.0) * omega);
      const double t2 = theta * theta;
      return omega * std::sqrt(1.0 + t2 * t2);
    }
    case DispersionKind::TimeDependentParaxial: {
      const double eta = q * c / (2.0 * omega);
      return omega * (1.0 + eta * eta);
    }
    case DispersionKind::Exact:
      return omega;
    case DispersionKind::Custom:
      return c * std::hypot(q, rel.custom_f(q, omega));
  }
  return 0.0;
}

double q_max(const DispersionRelation& rel, double omega) {
  if (!(omega > 0.0)) throw InvalidArgumentError("omega must be positive");
  const double c = rel.units.c;
  switch (rel.kind) {
    case DispersionKind::TimeIndependentParaxial: return std::sqrt(2.0) * omega / c;
    case DispersionKind::TimeDependentParaxial: return 2.0 * omega / c;
    case DispersionKind::Exact: return omega / c;
    case DispersionKind::Custom: {
      auto fn = [&](double q) { return rel.custom_f(q, omega); };
      double hi = omega / c;
      int grow = 0;
      while (fn(hi) > 0.0) {
        hi *= 2.0;
        if (++grow > 60) throw NoBoundaryError("no q with f(q, omega) < 0 found");
      }
      return bisect_root(fn, 0.0, hi, 1e-12);
    }
  }
  return 0.0;
}

double omega_min(const DispersionRelation& rel, double q) {
  if (q < 0.0) throw InvalidArgumentError("q must be nonnegative");
  const double c = rel.units.c;
  if (q == 0.0) return 0.0;
  switch (rel.kind) {
    case DispersionKind::TimeIndependentParaxial: return q * c / std::sqrt(2.0);
    case DispersionKind::TimeDependentParaxial: return 0.5 * q * c;
    case DispersionKind::Exact: return q * c;
    case DispersionKind::Custom: {
      auto fn = [&](double w) { return rel.custom_f(q, w); };
      double hi = q * c;
      int grow = 0;
      while (fn(hi) < 0.0) {
        hi *= 2.0;
        if (++grow > 60) throw NoBoundaryError("no omega with f(q, omega) >= 0 found");
      }
      double lo = hi;
      grow = 0;
      while (fn(lo) > 0.0) {
        lo *= 0.5;
        if (++grow > 200) return 0.0;  // f positive down to omega -> 0
      }
      return bisect_root(fn, lo, hi, 1e-12);
    }
  }
  return 0.0;
}

double omega_from_zeta(const DispersionRelation& rel, double q, double zeta) {
  if (q < 0.0 || !(zeta > 0.0))
    throw InvalidArgumentError("omega_from_zeta needs q >= 0 and zeta > 0");
  const double c = rel.units.c;
  switch (rel.kind) {
    // the paraxial branches invert as quadratics in omega
    case DispersionKind::TimeIndependentParaxial:
      return 0.5 * (c * zeta + std::sqrt(c * c * zeta * zeta + 2.0 * q * q * c * c));
    case DispersionKind::TimeDependentParaxial:
      return 0.5 * (c * zeta + std::sqrt(c * c * zeta * zeta + q * q * c * c));
    case DispersionKind::Exact:
      return c * std::hypot(q, zeta);
    case DispersionKind::Custom: {
      auto fn = [&](double w) { return rel.custom_f(q, w) - zeta; };
      double lo = omega_min(rel, q);
      if (lo == 0.0) lo = 1e-12 * c * zeta;
      double hi = std::max(2.0 * lo, 2.0 * c * zeta);
      int grow = 0;
      while (fn(hi) < 0.0) {
        hi *= 2.0;
        if (++grow > 60)
          throw UnmappableNodeError("zeta = " + format_double(zeta) +
                                    " not reached by f(q, .) at q = " + format_double(q));
      }
      return bisect_root(fn, lo, hi, 1e-12);
    }
  }
  return 0.0;
}

MonotonicityCheck validate_monotone(const DispersionRelation& rel, double q, double omega_lo,
                                    double omega_hi, int n_samples) {
  if (!(omega_lo < omega_hi))
    throw InvalidArgumentError("validate_monotone needs omega_lo < omega_hi");
  if (n_samples < 3) throw InvalidArgumentError("validate_monotone needs n_samples >= 3");
  MonotonicityCheck check;
  for (int i = 0; i < n_samples; ++i) {
    double w = omega_lo + (omega_hi - omega_lo) * i / (n_samples - 1);
    if (!in_domain(rel, q, w)) continue;
    if (!(jacobian(rel, q, w) > 0.0)) {
      check.monotone = false;
      check.first_violation = w;
      break;
    }
  }
  return check;
}

}  // namespace asbeam
