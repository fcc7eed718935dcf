#pragma once

#include <utility>

#include "asbeam/common.hpp"
#include "asbeam/dispersion.hpp"
#include "asbeam/field.hpp"
#include "asbeam/spectrum.hpp"

namespace asbeam {

// Classical normal-ordered field energy
//   H = sum_s sum_lambda int domega int d2q  hbar c sqrt(q^2 + f^2) |a|^2,
// with the grid-divergent vacuum term dropped.
struct EnergyReport {
  double total = 0.0;
  std::array<double, 2> per_s{};       // index by s_index(s)
  std::array<double, 2> per_lambda{};  // lambda 1, 2
  double mean_ck = 0.0;  // occupation-weighted mean of c|k|
};

EnergyReport energy(const AngularSpectrum& spec, const DispersionRelation& rel);

// sum_{lambda s} int |a|^2 d2q domega
double occupation(const AngularSpectrum& spec);

// Second-moment widths of the summed-component intensity, w^2 = 4 Var(x).
// Throws on an all-zero slice.
std::pair<double, double> beam_width(const FieldSlice& slice);

}  // namespace asbeam
