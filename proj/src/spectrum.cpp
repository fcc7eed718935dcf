#include "asbeam/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "asbeam/modes.hpp"

namespace asbeam {

AngularSpectrum AngularSpectrum::zeros(const TransverseGrid& grid, const FrequencyGrid& freq) {
  freq.validate();
  AngularSpectrum spec;
  spec.grid = grid;
  spec.freq = freq;
  for (auto& per_lambda : spec.amps)
    for (auto& a : per_lambda) a.assign(spec.node_count(), Complex{});
  return spec;
}

double forward_zeta_step(const DispersionRelation& rel, double q, double omega, double dw) {
  // f increases in omega, so omega + dw stays in domain
  return f_value(rel, q, omega + dw) - f_value(rel, q, omega);
}

bool AngularSpectrum::all_finite() const {
  for (const auto& per_lambda : amps)
    for (const auto& a : per_lambda)
      for (const Complex& v : a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double apply_mask(AngularSpectrum& spec, const DispersionRelation& rel) {
  const int n = spec.grid.n;
  double kept = 0.0, removed = 0.0;
  for (int iw = 0; iw < spec.freq.count(); ++iw) {
    const double omega = spec.freq.omegas[iw];
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double q = std::hypot(spec.grid.coord(ix), spec.grid.coord(iy));
        const bool inside = in_domain(rel, q, omega);
        for (auto& per_lambda : spec.amps) {
          for (auto& a : per_lambda) {
            Complex& v = a[spec.flat(iw, iy, ix)];
            if (inside) {
              kept += std::norm(v);
            } else {
              removed += std::norm(v);
              v = Complex{};
            }
          }
        }
      }
    }
  }
  const double total = kept + removed;
  spec.masked_power_fraction = total > 0.0 ? removed / total : 0.0;
  return spec.masked_power_fraction;
}

KSpaceAmplitude from_angular_spectrum(const AngularSpectrum& spec, const DispersionRelation& rel,
                                      JacobianScaling scaling) {
  const int n = spec.grid.n;
  KSpaceAmplitude kamp;
  kamp.grid = spec.grid;
  kamp.freq = spec.freq;
  kamp.zetas.assign(spec.node_count(), 0.0);
  for (auto& per_lambda : kamp.amps)
    for (auto& a : per_lambda) a.assign(spec.node_count(), Complex{});

  for (int iw = 0; iw < spec.freq.count(); ++iw) {
    const double omega = spec.freq.omegas[iw];
    const double dw = spec.freq.weights[iw];
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double q = std::hypot(spec.grid.coord(ix), spec.grid.coord(iy));
        const std::size_t at = spec.flat(iw, iy, ix);
        if (!in_domain(rel, q, omega)) {
          for (int lam = 0; lam < 2; ++lam)
            for (int si = 0; si < 2; ++si)
              if (std::norm(spec.amps[lam][si][at]) > 0.0)
                throw OutOfDomainError("nonzero amplitude on an out-of-domain node");
          continue;
        }
        const double f = f_value(rel, q, omega);
        double scale;
        if (scaling == JacobianScaling::Analytic) {
          scale = 1.0 / std::sqrt(jacobian(rel, q, omega));
        } else {
          const double dzeta = forward_zeta_step(rel, q, omega, dw);
          scale = std::sqrt(dw / dzeta);
        }
        kamp.zetas[at] = f;
        for (int lam = 0; lam < 2; ++lam)
          for (int si = 0; si < 2; ++si)
            kamp.amps[lam][si][at] = spec.amps[lam][si][at] * scale;
      }
    }
  }
  return kamp;
}

AngularSpectrum to_angular_spectrum(const KSpaceAmplitude& kamp, const DispersionRelation& rel,
                                    const FrequencyGrid& target, JacobianScaling scaling,
                                    double* resample_error) {
  AngularSpectrum spec = AngularSpectrum::zeros(kamp.grid, target);
  const int n = kamp.grid.n;
  double max_shift = 0.0;
  std::string offenders;
  int offender_count = 0;

  for (int iw = 0; iw < kamp.freq.count(); ++iw) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const std::size_t at = kamp.flat(iw, iy, ix);
        bool occupied = false;
        for (int lam = 0; lam < 2 && !occupied; ++lam)
          for (int si = 0; si < 2 && !occupied; ++si)
            occupied = std::norm(kamp.amps[lam][si][at]) > 0.0;
        if (!occupied) continue;

        const double q = std::hypot(kamp.grid.coord(ix), kamp.grid.coord(iy));
        const double zeta = kamp.zetas[at];
        double omega;
        try {
          omega = omega_from_zeta(rel, q, zeta);
        } catch (const UnmappableNodeError&) {
          if (offender_count < 8)
            offenders += " (iw=" + std::to_string(iw) + ",iy=" + std::to_string(iy) +
                         ",ix=" + std::to_string(ix) + ")";
          ++offender_count;
          continue;
        }

        // nearest node of the target grid, with the solved omega recorded as
        // a resampling error metric
        int jw = 0;
        double best = std::abs(target.omegas[0] - omega);
        for (int j = 1; j < target.count(); ++j) {
          double d = std::abs(target.omegas[j] - omega);
          if (d < best) {
            best = d;
            jw = j;
          }
        }
        max_shift = std::max(max_shift, best);

        double scale;
        if (scaling == JacobianScaling::Analytic) {
          scale = std::sqrt(jacobian(rel, q, omega));
        } else {
          const double dw = target.weights[jw];
          scale = std::sqrt(forward_zeta_step(rel, q, omega, dw) / dw);
        }
        const std::size_t to = spec.flat(jw, iy, ix);
        for (int lam = 0; lam < 2; ++lam)
          for (int si = 0; si < 2; ++si)
            spec.amps[lam][si][to] += kamp.amps[lam][si][at] * scale;
      }
    }
  }
  if (offender_count > 0)
    throw UnmappableNodeError(std::to_string(offender_count) +
                              " k-space nodes have zeta outside the range of f:" + offenders);
  if (resample_error) *resample_error = max_shift;
  apply_mask(spec, rel);
  return spec;
}

double measure_invariance(const AngularSpectrum& spec, const KSpaceAmplitude& kamp,
                          const DispersionRelation& rel, DeltaZetaRule rule) {
  if (spec.grid.n != kamp.grid.n || spec.freq.count() != kamp.freq.count())
    throw InvalidArgumentError("measure_invariance needs matched grids");

  const int n = spec.grid.n;
  const double dq2 = spec.grid.spacing * spec.grid.spacing;
  std::vector<double> as_terms, k_terms;

  for (int iw = 0; iw < spec.freq.count(); ++iw) {
    const double omega = spec.freq.omegas[iw];
    const double dw = spec.freq.weights[iw];
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const std::size_t at = spec.flat(iw, iy, ix);
        double amp2 = 0.0, kamp2 = 0.0;
        for (int lam = 0; lam < 2; ++lam) {
          for (int si = 0; si < 2; ++si) {
            amp2 += std::norm(spec.amps[lam][si][at]);
            kamp2 += std::norm(kamp.amps[lam][si][at]);
          }
        }
        if (amp2 > 0.0) as_terms.push_back(amp2 * dq2 * dw);
        if (kamp2 > 0.0) {
          const double q = std::hypot(spec.grid.coord(ix), spec.grid.coord(iy));
          double dzeta;
          if (rule == DeltaZetaRule::PerNode) {
            dzeta = forward_zeta_step(rel, q, omega, dw);
          } else {
            dzeta = jacobian(rel, q, omega + 0.5 * dw) * dw;
          }
          k_terms.push_back(kamp2 * dq2 * dzeta);
        }
      }
    }
  }
  const double as_total = pairwise_sum(as_terms);
  const double k_total = pairwise_sum(k_terms);
  if (as_total == 0.0) return 0.0;
  return std::abs(k_total - as_total) / as_total;
}

namespace {

double total_power(const AngularSpectrum& spec) {
  std::vector<double> terms;
  const double dq2 = spec.grid.spacing * spec.grid.spacing;
  for (int iw = 0; iw < spec.freq.count(); ++iw) {
    const double dw = spec.freq.weights[iw];
    for (std::size_t node = 0; node < spec.grid.nodes(); ++node) {
      const std::size_t at = static_cast<std::size_t>(iw) * spec.grid.nodes() + node;
      double amp2 = 0.0;
      for (const auto& per_lambda : spec.amps)
        for (const auto& a : per_lambda) amp2 += std::norm(a[at]);
      terms.push_back(amp2 * dq2 * dw);
    }
  }
  return pairwise_sum(terms);
}

}  // namespace

AngularSpectrum make_source(const BeamSource& src, const TransverseGrid& spectral,
                            const FrequencyGrid& freq, const DispersionRelation& rel) {
  const double pol_norm = std::norm(src.c1) + std::norm(src.c2);
  if (std::abs(pol_norm - 1.0) > 1e-9)
    throw InvalidArgumentError("polarization weights must satisfy |c1|^2 + |c2|^2 = 1");
  if (src.kind == SourceKind::Gaussian && !(src.waist > 0.0))
    throw InvalidArgumentError("Gaussian source requires waist > 0");
  if (src.s != 1 && src.s != -1) throw InvalidArgumentError("branch s must be +1 or -1");

  AngularSpectrum spec = AngularSpectrum::zeros(spectral, freq);
  const int n = spectral.n;
  const int si = s_index(src.s);
  double gauss_discrete = 0.0;  // sum of the bare profile^2 over kept nodes

  for (int iw = 0; iw < freq.count(); ++iw) {
    const double omega = freq.omegas[iw];
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double qx = spectral.coord(ix);
        const double qy = spectral.coord(iy);
        const double q = std::hypot(qx, qy);
        if (!in_domain(rel, q, omega)) continue;

        double profile = 0.0;
        switch (src.kind) {
          case SourceKind::Gaussian:
            profile = std::exp(-q * q * src.waist * src.waist / 4.0);
            break;
          case SourceKind::RingDelta:
            profile = std::abs(q - src.ring_radius) <= 0.5 * spectral.spacing ? 1.0 : 0.0;
            break;
          case SourceKind::NodeImpulse:
            profile = (ix == src.node_ix && iy == src.node_iy) ? 1.0 : 0.0;
            break;
        }
        if (profile == 0.0) continue;
        gauss_discrete += profile * profile;

        Complex a1, a2;
        if (src.polarization == PolarizationConvention::TriadWeights) {
          a1 = src.c1 * profile;
          a2 = src.c2 * profile;
        } else {
          const PolarizationTriad tr = triad(rel, qx, qy, src.s, omega);
          // p = c1 xhat + c2 yhat projected on the triad
          a1 = (src.c1 * tr.eps1[0] + src.c2 * tr.eps1[1]) * profile;
          a2 = (src.c1 * tr.eps2[0] + src.c2 * tr.eps2[1]) * profile;
        }
        if (src.flatten_mode_weight) {
          const double w = mode_weight(rel, q, omega);
          a1 /= w;
          a2 /= w;
        }
        const std::size_t at = spec.flat(iw, iy, ix);
        spec.amps[0][si][at] = a1;
        spec.amps[1][si][at] = a2;
      }
    }
  }

  if (src.kind == SourceKind::Gaussian) {
    // analytic power of the bare profile, per frequency node
    const double analytic = 2.0 * M_PI / (src.waist * src.waist) * freq.count();
    const double dq2 = spectral.spacing * spectral.spacing;
    if (gauss_discrete * dq2 < 0.99 * analytic) spec.clipping_warning = true;
  }

  const double power = total_power(spec);
  if (!(power > 0.0)) throw InvalidArgumentError("source has zero power on this grid");
  const double scale = 1.0 / std::sqrt(power);
  for (auto& per_lambda : spec.amps)
    for (auto& a : per_lambda)
      for (Complex& v : a) v *= scale;

  return spec;
}

}  // namespace asbeam
