#pragma once

#include <vector>

#include "asbeam/common.hpp"

namespace asbeam {

// Uniform symmetric sampling of one transverse plane, either spectral
// (q in [-lim, lim]^2) or spatial (x in [-lim, lim]^2). The origin is the
// sample at index n/2; node i sits at (i - n/2) * spacing.
struct TransverseGrid {
  int n = 0;
  double limit = 0.0;
  double spacing = 0.0;

  double coord(int i) const { return (i - n / 2) * spacing; }
  std::size_t nodes() const { return static_cast<std::size_t>(n) * n; }
  // flat layout: iy major, ix minor
  std::size_t flat(int iy, int ix) const { return static_cast<std::size_t>(iy) * n + ix; }
};

struct GridPair {
  TransverseGrid spectral;
  TransverseGrid spatial;
};

// Reciprocity-consistent spectral/spatial pair: dx * dq * n = 2*pi.
GridPair make_paired_grids(int n, double q_lim);

// Evaluation grid for stencil studies; spacing is free, not tied to any
// spectral grid.
TransverseGrid make_eval_grid(int n, double extent);

bool grids_paired(const TransverseGrid& spectral, const TransverseGrid& spatial,
                  double rel_tol = 1e-12);

// Carrier frequencies with quadrature weights standing in for d(omega).
// A monochromatic grid is one node with unit weight (spectral density times
// unit bandwidth).
struct FrequencyGrid {
  std::vector<double> omegas;
  std::vector<double> weights;

  int count() const { return static_cast<int>(omegas.size()); }

  static FrequencyGrid monochromatic(double omega);
  // count nodes over [omega_lo, omega_hi], weights equal to the spacing
  static FrequencyGrid uniform(double omega_lo, double omega_hi, int count);

  void validate() const;
};

}  // namespace asbeam
