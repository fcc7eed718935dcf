#pragma once

#include "asbeam/common.hpp"
#include "asbeam/dispersion.hpp"

namespace asbeam {

// Right-handed orthonormal set (eps1, eps2, khat) transverse to the wave
// vector k = (qx, qy, s f), as the Coulomb gauge requires:
//   eps1 = (f qhat - s q zhat) / sqrt(q^2 + f^2)
//   eps2 = s zhat x qhat
//   khat = (q qhat + s f zhat) / sqrt(q^2 + f^2)
// On axis (q = 0) the convention qhat := xhat applies; synthesis observables
// do not depend on that choice.
struct PolarizationTriad {
  Vec3 eps1;
  Vec3 eps2;
  Vec3 khat;
  int s = +1;
};

PolarizationTriad triad(const DispersionRelation& rel, double qx, double qy, int s,
                        double omega);

// Per-mode normalization weight sqrt(hbar (df/domega) / (16 pi^3 eps0 c sqrt(q^2+f^2))).
double mode_weight(const DispersionRelation& rel, double q, double omega);

}  // namespace asbeam
