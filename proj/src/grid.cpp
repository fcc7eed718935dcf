#include "asbeam/grid.hpp"

#include <cmath>

#include "asbeam/units.hpp"

namespace asbeam {

const char* unit_mode_name(UnitMode mode) {
  return mode == UnitMode::SI ? "si" : "natural";
}

GridPair make_paired_grids(int n, double q_lim) {
  if (n < 8 || n % 2 != 0)
    throw InvalidArgumentError("grid size must be even and >= 8, got " + std::to_string(n));
  if (!(q_lim > 0.0)) throw InvalidArgumentError("q_lim must be positive");

  TransverseGrid spectral;
  spectral.n = n;
  spectral.limit = q_lim;
  spectral.spacing = 2.0 * q_lim / n;

  TransverseGrid spatial;
  spatial.n = n;
  spatial.spacing = 2.0 * M_PI / (n * spectral.spacing);
  spatial.limit = 0.5 * n * spatial.spacing;

  return GridPair{spectral, spatial};
}

TransverseGrid make_eval_grid(int n, double extent) {
  if (n < 2 || n % 2 != 0)
    throw InvalidArgumentError("evaluation grid size must be even and >= 2");
  if (!(extent > 0.0)) throw InvalidArgumentError("evaluation extent must be positive");
  TransverseGrid g;
  g.n = n;
  g.limit = extent;
  g.spacing = 2.0 * extent / n;
  return g;
}

bool grids_paired(const TransverseGrid& spectral, const TransverseGrid& spatial, double rel_tol) {
  if (spectral.n != spatial.n) return false;
  double product = spectral.spacing * spatial.spacing * spectral.n;
  return std::abs(product - 2.0 * M_PI) <= rel_tol * 2.0 * M_PI;
}

FrequencyGrid FrequencyGrid::monochromatic(double omega) {
  FrequencyGrid g;
  g.omegas = {omega};
  g.weights = {1.0};
  g.validate();
  return g;
}

FrequencyGrid FrequencyGrid::uniform(double omega_lo, double omega_hi, int count) {
  if (count < 2) throw InvalidArgumentError("uniform frequency grid needs >= 2 nodes");
  if (!(omega_lo < omega_hi)) throw InvalidArgumentError("omega_lo must be < omega_hi");
  FrequencyGrid g;
  double dw = (omega_hi - omega_lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    g.omegas.push_back(omega_lo + i * dw);
    g.weights.push_back(dw);
  }
  g.validate();
  return g;
}

void FrequencyGrid::validate() const {
  if (omegas.empty() || omegas.size() != weights.size())
    throw InvalidArgumentError("frequency grid must have matching nonempty omegas/weights");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!(omegas[i] > 0.0)) throw InvalidArgumentError("frequencies must be positive");
    if (!(weights[i] > 0.0)) throw InvalidArgumentError("frequency weights must be positive");
    if (i > 0 && !(omegas[i] > omegas[i - 1]))
      throw InvalidArgumentError("frequencies must be strictly increasing");
  }
}

}  // namespace asbeam
