#pragma once

#include "asbeam/common.hpp"

namespace asbeam {

enum class UnitMode { SI, Natural };

// Physical constants every formula reads from. Natural mode pins
// c = hbar = eps0 = 1 exactly; SI uses CODATA values.
struct UnitSystem {
  UnitMode mode = UnitMode::Natural;
  double c = 1.0;
  double hbar = 1.0;
  double eps0 = 1.0;

  static UnitSystem natural() { return UnitSystem{UnitMode::Natural, 1.0, 1.0, 1.0}; }

  static UnitSystem si() {
    return UnitSystem{UnitMode::SI, 299792458.0, 1.054571817e-34, 8.8541878128e-12};
  }

  void validate() const {
    if (!(c > 0.0) || !(hbar > 0.0) || !(eps0 > 0.0))
      throw InvalidArgumentError("unit system constants must be strictly positive");
    if (mode == UnitMode::Natural && (c != 1.0 || hbar != 1.0 || eps0 != 1.0))
      throw InvalidArgumentError("natural units require c = hbar = eps0 = 1");
  }
};

const char* unit_mode_name(UnitMode mode);

}  // namespace asbeam
