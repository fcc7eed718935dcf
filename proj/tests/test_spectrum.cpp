#include <doctest.h>

#include <cmath>

#include "asbeam/observables.hpp"
#include "asbeam/spectrum.hpp"

using namespace asbeam;

namespace {

const UnitSystem kNat = UnitSystem::natural();

// gaussian in q and omega on both polarizations of the forward branch
AngularSpectrum polychromatic_fixture(const DispersionRelation& rel, int n_omega) {
  GridPair grids = make_paired_grids(16, 0.3);
  FrequencyGrid freq = FrequencyGrid::uniform(0.8, 1.6, n_omega);
  AngularSpectrum spec = AngularSpectrum::zeros(grids.spectral, freq);
  for (int iw = 0; iw < freq.count(); ++iw) {
    const double env = std::exp(-std::pow((freq.omegas[iw] - 1.2) / 0.2, 2));
    for (int iy = 0; iy < 16; ++iy)
      for (int ix = 0; ix < 16; ++ix) {
        const double q = std::hypot(grids.spectral.coord(ix), grids.spectral.coord(iy));
        const double amp = env * std::exp(-q * q * 70.0);
        spec.at(0, +1, iw, iy, ix) = amp;
        spec.at(1, +1, iw, iy, ix) = Complex(0.3, 0.4) * amp;
      }
  }
  apply_mask(spec, rel);
  return spec;
}

}  // namespace

TEST_CASE("masking zeroes out-of-domain nodes and is idempotent") {
  auto ex = DispersionRelation::exact(kNat);
  GridPair grids = make_paired_grids(16, 1.5);  // corners reach past q_max = 1
  AngularSpectrum spec = AngularSpectrum::zeros(grids.spectral, FrequencyGrid::monochromatic(1.0));
  for (auto& per_lambda : spec.amps)
    for (auto& a : per_lambda)
      for (Complex& v : a) v = Complex(1.0, -0.5);

  const double removed = apply_mask(spec, ex);
  CHECK(removed > 0.0);
  for (int iy = 0; iy < 16; ++iy)
    for (int ix = 0; ix < 16; ++ix) {
      const double q = std::hypot(grids.spectral.coord(ix), grids.spectral.coord(iy));
      if (!in_domain(ex, q, 1.0)) CHECK(spec.at(0, +1, 0, iy, ix) == Complex{});
    }

  AngularSpectrum twice = spec;
  CHECK(apply_mask(twice, ex) == 0.0);
  for (std::size_t i = 0; i < spec.node_count(); ++i)
    CHECK(twice.amps[0][0][i] == spec.amps[0][0][i]);
}

TEST_CASE("gaussian source profile and normalization") {
  auto ti = DispersionRelation::ti_paraxial(kNat);
  GridPair grids = make_paired_grids(32, 0.4);  // dq = 0.025
  BeamSource src;
  src.kind = SourceKind::Gaussian;
  src.waist = 20.0;  // q = 2/waist = 0.1 sits exactly on node n/2 + 4
  AngularSpectrum spec = make_source(src, grids.spectral, FrequencyGrid::monochromatic(1.0), ti);

  const Complex center = spec.at(0, +1, 0, 16, 16);
  const Complex off = spec.at(0, +1, 0, 16, 20);
  CHECK(std::abs(center / off) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  CHECK(occupation(spec) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(spec.clipping_warning);
  CHECK(spec.all_finite());
}

TEST_CASE("node impulse source") {
  auto ti = DispersionRelation::ti_paraxial(kNat);
  GridPair grids = make_paired_grids(16, 0.4);
  BeamSource src;
  src.kind = SourceKind::NodeImpulse;
  src.node_ix = 10;
  src.node_iy = 8;
  AngularSpectrum spec = make_source(src, grids.spectral, FrequencyGrid::monochromatic(1.0), ti);

  CHECK(occupation(spec) == doctest::Approx(1.0).epsilon(1e-12));
  int nonzero = 0;
  for (const auto& per_lambda : spec.amps)
    for (const auto& a : per_lambda)
      for (const Complex& v : a)
        if (v != Complex{}) ++nonzero;
  CHECK(nonzero == 1);
}

TEST_CASE("too-small waist records a clipping warning") {
  auto ti = DispersionRelation::ti_paraxial(kNat);
  GridPair grids = make_paired_grids(32, 0.4);
  BeamSource src;
  src.kind = SourceKind::Gaussian;
  src.waist = 1.0;  // spectrum much wider than the grid
  AngularSpectrum spec = make_source(src, grids.spectral, FrequencyGrid::monochromatic(1.0), ti);
  CHECK(spec.clipping_warning);
}

TEST_CASE("source parameter validation") {
  auto ti = DispersionRelation::ti_paraxial(kNat);
  GridPair grids = make_paired_grids(16, 0.4);
  BeamSource src;
  src.kind = SourceKind::Gaussian;
  src.waist = -1.0;
  CHECK_THROWS_AS(make_source(src, grids.spectral, FrequencyGrid::monochromatic(1.0), ti),
                  InvalidArgumentError);
  src.waist = 10.0;
  src.c1 = Complex(1.0, 0.0);
  src.c2 = Complex(0.5, 0.0);  // not normalized
  CHECK_THROWS_AS(make_source(src, grids.spectral, FrequencyGrid::monochromatic(1.0), ti),
                  InvalidArgumentError);
}

TEST_CASE("change of variables at hand-checked nodes") {
  auto ex = DispersionRelation::exact(kNat);
  GridPair grids = make_paired_grids(16, 0.8);  // dq = 0.1, node +6 has qx = 0.6
  AngularSpectrum spec = AngularSpectrum::zeros(grids.spectral, FrequencyGrid::monochromatic(1.0));
  spec.at(0, +1, 0, 8, 14) = Complex(1.0, 0.0);  // qx = 0.6, qy = 0
  spec.at(0, +1, 0, 8, 8) = Complex(0.0, 2.0);   // on-axis node

  KSpaceAmplitude kamp = from_angular_spectrum(spec, ex);
  // zeta = f(0.6, 1) = 0.8, amplitude divided by sqrt(J) = sqrt(1.25)
  CHECK(kamp.zetas[kamp.flat(0, 8, 14)] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(std::abs(kamp.amps[0][0][kamp.flat(0, 8, 14)]) ==
        doctest::Approx(1.0 / std::sqrt(1.25)).epsilon(1e-13));
  // on axis at c = 1 the scaling is the identity
  CHECK(kamp.amps[0][0][kamp.flat(0, 8, 8)] == Complex(0.0, 2.0));

  double resample = -1.0;
  AngularSpectrum back = to_angular_spectrum(kamp, ex, spec.freq, JacobianScaling::Analytic,
                                             &resample);
  CHECK(resample <= 1e-12);
  CHECK(std::abs(back.at(0, +1, 0, 8, 14) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(back.at(0, +1, 0, 8, 8) - Complex(0.0, 2.0)) < 1e-12);
}

TEST_CASE("round trip is the identity for every kind") {
  for (auto make : {&DispersionRelation::ti_paraxial, &DispersionRelation::td_paraxial,
                    &DispersionRelation::exact}) {
    auto rel = make(kNat);
    AngularSpectrum spec = polychromatic_fixture(rel, 9);
    AngularSpectrum back = to_angular_spectrum(from_angular_spectrum(spec, rel), rel, spec.freq);

    double peak = 0.0, worst = 0.0;
    for (int lam = 0; lam < 2; ++lam)
      for (int si = 0; si < 2; ++si)
        for (std::size_t i = 0; i < spec.node_count(); ++i) {
          peak = std::max(peak, std::abs(spec.amps[lam][si][i]));
          worst = std::max(worst, std::abs(back.amps[lam][si][i] - spec.amps[lam][si][i]));
        }
    CHECK(worst / peak < 1e-12);
  }
}

TEST_CASE("measure invariance: exact per node, second order with midpoint") {
  auto ti = DispersionRelation::ti_paraxial(kNat);

  AngularSpectrum coarse = polychromatic_fixture(ti, 17);
  KSpaceAmplitude k_coarse =
      from_angular_spectrum(coarse, ti, JacobianScaling::ForwardDifference);
  CHECK(measure_invariance(coarse, k_coarse, ti, DeltaZetaRule::PerNode) <= 1e-12);

  // halving domega (17 -> 33 nodes over the same span) quarters the midpoint error
  AngularSpectrum fine = polychromatic_fixture(ti, 33);
  KSpaceAmplitude k_fine = from_angular_spectrum(fine, ti, JacobianScaling::ForwardDifference);
  const double e_coarse = measure_invariance(coarse, k_coarse, ti, DeltaZetaRule::Midpoint);
  const double e_fine = measure_invariance(fine, k_fine, ti, DeltaZetaRule::Midpoint);
  CHECK(e_coarse / e_fine == doctest::Approx(4.0).epsilon(0.15));

  AngularSpectrum zero =
      AngularSpectrum::zeros(coarse.grid, coarse.freq);
  KSpaceAmplitude k_zero = from_angular_spectrum(zero, ti);
  CHECK(measure_invariance(zero, k_zero, ti, DeltaZetaRule::PerNode) == 0.0);
}

TEST_CASE("unmappable zeta nodes are reported") {
  // f saturates at 1: zeta = 2 is outside the range of f(q, .)
  auto bounded = DispersionRelation::custom(
      kNat, [](double q, double w) { return std::tanh(w) - 0.1 * q; });
  GridPair grids = make_paired_grids(8, 0.2);
  KSpaceAmplitude kamp;
  kamp.grid = grids.spectral;
  kamp.freq = FrequencyGrid::monochromatic(1.0);
  kamp.zetas.assign(grids.spectral.nodes(), 0.0);
  for (auto& per_lambda : kamp.amps)
    for (auto& a : per_lambda) a.assign(grids.spectral.nodes(), Complex{});
  kamp.zetas[kamp.flat(0, 4, 4)] = 2.0;
  kamp.amps[0][0][kamp.flat(0, 4, 4)] = Complex(1.0, 0.0);

  CHECK_THROWS_AS(to_angular_spectrum(kamp, bounded, kamp.freq), UnmappableNodeError);
}
