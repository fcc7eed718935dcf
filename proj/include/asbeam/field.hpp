#pragma once

#include <map>
#include <string>
#include <vector>

#include "asbeam/common.hpp"
#include "asbeam/grid.hpp"

namespace asbeam {

// Complex 3-vector field samples on a spatial grid at fixed (z, t): either a
// positive-frequency field A(+) or an envelope Psi_s. Metadata names the
// kernel that produced it.
struct FieldSlice {
  TransverseGrid grid;  // spatial
  double z = 0.0;
  double t = 0.0;
  std::vector<CVec3> values;  // flat index iy * n + ix
  std::map<std::string, std::string> metadata;

  static FieldSlice zeros(const TransverseGrid& grid, double z, double t);

  CVec3& at(int iy, int ix) { return values[grid.flat(iy, ix)]; }
  const CVec3& at(int iy, int ix) const { return values[grid.flat(iy, ix)]; }

  bool all_finite() const;
};

// sqrt( sum |v|^2 dx^2 ) over all nodes and vector components.
double l2_norm(const FieldSlice& slice);

}  // namespace asbeam
