#include "asbeam/modes.hpp"

#include <cmath>

namespace asbeam {

PolarizationTriad triad(const DispersionRelation& rel, double qx, double qy, int s,
                        double omega) {
  const double q = std::hypot(qx, qy);
  const double f = f_value(rel, q, omega);

  // qhat := xhat on axis
  double qhx = 1.0, qhy = 0.0;
  if (q > 0.0) {
    qhx = qx / q;
    qhy = qy / q;
  }
  const double nrm = std::hypot(q, f);

  PolarizationTriad tr;
  tr.s = s;
  tr.eps1 = {f * qhx / nrm, f * qhy / nrm, -s * q / nrm};
  tr.eps2 = {-s * qhy, s * qhx, 0.0};
  tr.khat = {qx / nrm, qy / nrm, s * f / nrm};
  return tr;
}

double mode_weight(const DispersionRelation& rel, double q, double omega) {
  const double f = f_value(rel, q, omega);
  const double dfdw = jacobian(rel, q, omega);
  const UnitSystem& u = rel.units;
  const double pi3 = M_PI * M_PI * M_PI;
  return std::sqrt(u.hbar * dfdw / (16.0 * pi3 * u.eps0 * u.c * std::hypot(q, f)));
}

}  // namespace asbeam
