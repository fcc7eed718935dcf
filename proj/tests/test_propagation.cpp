#include <doctest.h>

#include <cmath>

#include "asbeam/observables.hpp"
#include "asbeam/propagation.hpp"

using namespace asbeam;

namespace {

const UnitSystem kNat = UnitSystem::natural();

DispersionRelation rel_for(KernelKind kind) {
  switch (kind) {
    case KernelKind::FresnelTI: return DispersionRelation::ti_paraxial(kNat);
    case KernelKind::HalfFresnelTD: return DispersionRelation::td_paraxial(kNat);
    default: return DispersionRelation::exact(kNat);
  }
}

AngularSpectrum gaussian_probe(const DispersionRelation& rel, int n, double q_lim) {
  GridPair grids = make_paired_grids(n, q_lim);
  BeamSource src;
  src.kind = SourceKind::Gaussian;
  src.waist = 6.0 / q_lim;
  src.polarization = PolarizationConvention::TransverseProjection;
  return make_source(src, grids.spectral, FrequencyGrid::monochromatic(1.0), rel);
}

double rel_l2_diff(const FieldSlice& a, const FieldSlice& b) {
  FieldSlice d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i)
    for (int c = 0; c < 3; ++c) d.values[i][c] -= b.values[i][c];
  return l2_norm(d) / l2_norm(a);
}

const KernelKind kKernels[] = {KernelKind::FresnelTI, KernelKind::HalfFresnelTD,
                               KernelKind::ExactAS};

}  // namespace

TEST_CASE("kernel phases at hand-evaluated points") {
  for (KernelKind kind : kKernels) {
    auto rel = rel_for(kind);
    CHECK(kernel_phase(kind, rel, 0.35, 1.0, +1, 0.0, 0.0) == 0.0);
  }
  CHECK(kernel_phase(KernelKind::FresnelTI, rel_for(KernelKind::FresnelTI), 0.2, 1.0, +1, 1.0,
                     0.0) == doctest::Approx(-0.02).epsilon(1e-14));
  CHECK(kernel_phase(KernelKind::ExactAS, rel_for(KernelKind::ExactAS), 0.6, 1.0, +1, 1.0, 0.0) ==
        doctest::Approx(-0.2).epsilon(1e-13));
  // -(q^2 c / 4 omega)(s z + c t) = -(0.04)(5)
  CHECK(kernel_phase(KernelKind::HalfFresnelTD, rel_for(KernelKind::HalfFresnelTD), 0.4, 1.0, +1,
                     2.0, 3.0) == doctest::Approx(-0.2).epsilon(1e-14));
}

TEST_CASE("kernel and dispersion kinds must match") {
  auto exact = DispersionRelation::exact(kNat);
  CHECK_THROWS_AS(kernel_phase(KernelKind::FresnelTI, exact, 0.1, 1.0, +1, 1.0, 0.0),
                  KindMismatchError);
  AngularSpectrum spec = gaussian_probe(exact, 16, 0.3);
  CHECK_THROWS_AS(envelope_slice(spec, exact, KernelKind::FresnelTI, +1, 0.0, 0.0),
                  KindMismatchError);
}

TEST_CASE("closed-form kernel phases equal the generic envelope phase") {
  UniformRng rng(5);
  for (KernelKind kind : kKernels) {
    auto rel = rel_for(kind);
    for (int i = 0; i < 200; ++i) {
      const double omega = rng.in_range(0.5, 2.0);
      const double q = rng.next() * 0.98 * q_max(rel, omega);
      const int s = rng.next() < 0.5 ? +1 : -1;
      const double z = rng.in_range(-5.0, 5.0);
      const double t = rng.in_range(-5.0, 5.0);
      const double closed = kernel_phase(kind, rel, q, omega, s, z, t);
      const double generic = envelope_phase(rel, q, omega, s, z, t);
      CHECK(std::abs(closed - generic) <= 1e-12 * std::max(1.0, std::abs(generic)));
    }
  }
}

TEST_CASE("kernel phases compose additively in z at t = 0") {
  UniformRng rng(9);
  for (KernelKind kind : {KernelKind::FresnelTI, KernelKind::ExactAS}) {
    auto rel = rel_for(kind);
    for (int i = 0; i < 100; ++i) {
      const double omega = rng.in_range(0.5, 2.0);
      const double q = rng.next() * 0.9 * q_max(rel, omega);
      const double z1 = rng.in_range(-4.0, 4.0), z2 = rng.in_range(-4.0, 4.0);
      const double whole = kernel_phase(kind, rel, q, omega, +1, z1 + z2, 0.0);
      const double parts = kernel_phase(kind, rel, q, omega, +1, z1, 0.0) +
                           kernel_phase(kind, rel, q, omega, +1, z2, 0.0);
      CHECK(std::abs(whole - parts) <= 1e-12 * std::max(1.0, std::abs(whole)));
    }
  }
}

TEST_CASE("propagation leaves per-node magnitudes and occupation unchanged") {
  for (KernelKind kind : kKernels) {
    auto rel = rel_for(kind);
    AngularSpectrum spec = gaussian_probe(rel, 16, 0.3);
    AngularSpectrum moved = propagate_spectrum(spec, rel, kind, 7.3, 2.1);
    double worst = 0.0;
    for (int lam = 0; lam < 2; ++lam)
      for (int si = 0; si < 2; ++si)
        for (std::size_t i = 0; i < spec.node_count(); ++i) {
          const double a0 = std::abs(spec.amps[lam][si][i]);
          if (a0 == 0.0) continue;
          worst = std::max(worst, std::abs(std::abs(moved.amps[lam][si][i]) - a0) / a0);
        }
    CHECK(worst <= 1e-14);
    CHECK(std::abs(occupation(moved) / occupation(spec) - 1.0) <= 1e-14);
  }
}

TEST_CASE("node impulse synthesizes a single plane wave") {
  auto ti = DispersionRelation::ti_paraxial(kNat);
  GridPair grids = make_paired_grids(16, 0.3);
  BeamSource src;
  src.kind = SourceKind::NodeImpulse;
  src.node_ix = 10;
  src.node_iy = 7;
  AngularSpectrum spec = make_source(src, grids.spectral, FrequencyGrid::monochromatic(1.0), ti);

  FieldSlice slice = envelope_slice(spec, ti, KernelKind::FresnelTI, +1, 0.0, 0.0);
  double lo = 1e300, hi = 0.0;
  for (const auto& v : slice.values) {
    const double m = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  CHECK(hi / lo - 1.0 <= 1e-12);
}

TEST_CASE("fft path equals the direct reference path") {
  for (KernelKind kind : kKernels) {
    auto rel = rel_for(kind);
    AngularSpectrum spec = gaussian_probe(rel, 32, 0.3);
    FieldSlice fft = envelope_slice(spec, rel, kind, +1, 4.0, 0.7, 0, SynthesisPath::Fft);
    FieldSlice direct =
        envelope_slice(spec, rel, kind, +1, 4.0, 0.7, 0, SynthesisPath::DirectQuadrature);
    CHECK(rel_l2_diff(direct, fft) <= 1e-10);
  }
}

TEST_CASE("factored evaluation equals the reference loop on a free grid") {
  auto ti = DispersionRelation::ti_paraxial(kNat);
  AngularSpectrum spec = gaussian_probe(ti, 16, 0.3);
  const TransverseGrid eval = make_eval_grid(12, 23.0);

  FieldSlice fast = envelope_on_grid(spec, ti, KernelKind::FresnelTI, +1, 2.0, 0.4, 0, eval);
  // reference: evaluate the sum without factorization
  FieldSlice slow = FieldSlice::zeros(eval, 2.0, 0.4);
  const double dq2 = spec.grid.spacing * spec.grid.spacing;
  for (int my = 0; my < eval.n; ++my)
    for (int mx = 0; mx < eval.n; ++mx) {
      CVec3 acc{};
      for (int jy = 0; jy < 16; ++jy)
        for (int jx = 0; jx < 16; ++jx) {
          const double qx = spec.grid.coord(jx), qy = spec.grid.coord(jy);
          const double q = std::hypot(qx, qy);
          if (!in_domain(ti, q, 1.0)) continue;
          const Complex a1 = spec.at(0, +1, 0, jy, jx), a2 = spec.at(1, +1, 0, jy, jx);
          if (a1 == Complex{} && a2 == Complex{}) continue;
          PolarizationTriad tr = triad(ti, qx, qy, +1, 1.0);
          const double w = mode_weight(ti, q, 1.0);
          const double phase = kernel_phase(KernelKind::FresnelTI, ti, q, 1.0, +1, 2.0, 0.4) +
                               qx * eval.coord(mx) + qy * eval.coord(my);
          const Complex factor = std::polar(w, phase);
          for (int c = 0; c < 3; ++c) acc[c] += factor * (a1 * tr.eps1[c] + a2 * tr.eps2[c]);
        }
      for (int c = 0; c < 3; ++c) slow.values[eval.flat(my, mx)][c] = acc[c] * dq2;
    }
  CHECK(rel_l2_diff(slow, fast) <= 1e-12);
}

TEST_CASE("field slice: unit carrier at z = t = 0 and modulus invariance") {
  auto ex = DispersionRelation::exact(kNat);
  AngularSpectrum spec = gaussian_probe(ex, 16, 0.3);

  FieldSlice field = field_slice(spec, ex, KernelKind::ExactAS, 0.0, 0.0);
  FieldSlice env = envelope_slice(spec, ex, KernelKind::ExactAS, +1, 0.0, 0.0);
  // single forward branch, single omega with weight 1: the field is the envelope
  CHECK(rel_l2_diff(env, field) <= 1e-13);

  // |A| = |Psi| pointwise under the unimodular carrier
  FieldSlice moved_field = field_slice(spec, ex, KernelKind::ExactAS, 3.0, 1.5);
  FieldSlice moved_env = envelope_slice(spec, ex, KernelKind::ExactAS, +1, 3.0, 1.5);
  for (std::size_t i = 0; i < moved_field.values.size(); ++i)
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(std::abs(moved_field.values[i][c]) - std::abs(moved_env.values[i][c])) <=
            1e-12);
}

TEST_CASE("two-frequency carrier periodicity for the exact kind") {
  auto ex = DispersionRelation::exact(kNat);
  GridPair grids = make_paired_grids(16, 0.3);
  FrequencyGrid freq;
  freq.omegas = {1.0, 2.0};
  freq.weights = {1.0, 1.0};
  AngularSpectrum spec = AngularSpectrum::zeros(grids.spectral, freq);
  for (int iw = 0; iw < 2; ++iw)
    for (int iy = 0; iy < 16; ++iy)
      for (int ix = 0; ix < 16; ++ix) {
        const double q = std::hypot(grids.spectral.coord(ix), grids.spectral.coord(iy));
        spec.at(0, +1, iw, iy, ix) = (iw == 0 ? 1.0 : 0.6) * std::exp(-q * q * 200.0);
      }
  apply_mask(spec, ex);

  FieldSlice at_zero = field_slice(spec, ex, KernelKind::ExactAS, 0.0, 0.0);
  FieldSlice at_period = field_slice(spec, ex, KernelKind::ExactAS, 0.0, 2.0 * M_PI);
  CHECK(rel_l2_diff(at_zero, at_period) <= 1e-12);
}

TEST_CASE("fubini totals agree and match the normalization") {
  auto ti = DispersionRelation::ti_paraxial(kNat);
  AngularSpectrum spec = gaussian_probe(ti, 16, 0.3);
  auto [by_q, by_omega] = fubini_totals(spec, ti);
  CHECK(std::abs(by_q - by_omega) <= 1e-12 * by_q);
  CHECK(by_q == doctest::Approx(1.0).epsilon(1e-12));

  AngularSpectrum zero = AngularSpectrum::zeros(spec.grid, spec.freq);
  auto [zq, zw] = fubini_totals(zero, ti);
  CHECK(zq == 0.0);
  CHECK(zw == 0.0);
}
