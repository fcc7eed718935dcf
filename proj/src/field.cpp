#include "asbeam/field.hpp"

#include <cmath>

namespace asbeam {

FieldSlice FieldSlice::zeros(const TransverseGrid& grid, double z, double t) {
  FieldSlice slice;
  slice.grid = grid;
  slice.z = z;
  slice.t = t;
  slice.values.assign(grid.nodes(), CVec3{});
  return slice;
}

bool FieldSlice::all_finite() const {
  for (const auto& v : values)
    for (const auto& c : v)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double l2_norm(const FieldSlice& slice) {
  std::vector<double> terms;
  terms.reserve(slice.values.size());
  for (const auto& v : slice.values)
    terms.push_back(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  double dx = slice.grid.spacing;
  return std::sqrt(pairwise_sum(terms) * dx * dx);
}

}  // namespace asbeam
