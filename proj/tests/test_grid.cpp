#include <doctest.h>

#include "asbeam/field.hpp"
#include "asbeam/grid.hpp"

using namespace asbeam;

TEST_CASE("paired grids satisfy the DFT reciprocity") {
  GridPair g = make_paired_grids(8, 4.0);
  CHECK(g.spectral.spacing == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.spatial.spacing == doctest::Approx(2.0 * M_PI / 8.0).epsilon(1e-15));

  for (int n : {8, 32, 256}) {
    for (double q_lim : {0.3, 4.0, 17.5}) {
      GridPair p = make_paired_grids(n, q_lim);
      CHECK(grids_paired(p.spectral, p.spatial));
      CHECK(std::abs(p.spectral.spacing * p.spatial.spacing * n - 2.0 * M_PI) <=
            8e-16 * 2.0 * M_PI);
      // spacing relation inverts back to the q limit
      CHECK(0.5 * n * p.spectral.spacing == doctest::Approx(q_lim).epsilon(1e-15));
      // origin is a sample point
      CHECK(p.spectral.coord(n / 2) == 0.0);
      CHECK(p.spatial.coord(n / 2) == 0.0);
    }
  }
}

TEST_CASE("grid preconditions") {
  CHECK_THROWS_AS(make_paired_grids(7, 1.0), InvalidArgumentError);
  CHECK_THROWS_AS(make_paired_grids(6, 1.0), InvalidArgumentError);
  CHECK_THROWS_AS(make_paired_grids(16, 0.0), InvalidArgumentError);
  CHECK_THROWS_AS(make_paired_grids(16, -2.0), InvalidArgumentError);
}

TEST_CASE("frequency grids") {
  FrequencyGrid mono = FrequencyGrid::monochromatic(2.5);
  CHECK(mono.count() == 1);
  CHECK(mono.weights[0] == 1.0);

  FrequencyGrid uni = FrequencyGrid::uniform(1.0, 2.0, 11);
  CHECK(uni.count() == 11);
  CHECK(uni.weights[3] == doctest::Approx(0.1).epsilon(1e-14));

  FrequencyGrid bad;
  bad.omegas = {1.0, 0.5};
  bad.weights = {0.1, 0.1};
  CHECK_THROWS_AS(bad.validate(), InvalidArgumentError);
  bad.omegas = {-1.0};
  bad.weights = {1.0};
  CHECK_THROWS_AS(bad.validate(), InvalidArgumentError);
}

TEST_CASE("slice l2 norm") {
  TransverseGrid g = make_eval_grid(8, 4.0);  // spacing exactly 1
  REQUIRE(g.spacing == 1.0);

  FieldSlice zero = FieldSlice::zeros(g, 0.0, 0.0);
  CHECK(l2_norm(zero) == 0.0);

  FieldSlice single = FieldSlice::zeros(g, 0.0, 0.0);
  single.at(3, 5) = CVec3{Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
  CHECK(l2_norm(single) == doctest::Approx(1.0).epsilon(1e-15));

  FieldSlice uniform = FieldSlice::zeros(g, 0.0, 0.0);
  const Complex c(2.0, -1.0);
  for (auto& v : uniform.values) v[1] = c;
  CHECK(l2_norm(uniform) == doctest::Approx(std::abs(c) * 8 * g.spacing).epsilon(1e-14));
}
