#include "asbeam/propagation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

namespace asbeam {

namespace {

void require_kind_match(KernelKind kind, const DispersionRelation& rel) {
  if (rel.kind != kernel_dispersion(kind))
    throw KindMismatchError(std::string("kernel ") + kernel_name(kind) + " requires dispersion " +
                            kind_name(kernel_dispersion(kind)) + ", got " + kind_name(rel.kind));
}

// W(q, omega) * (a1 eps1 + a2 eps2) * exp(i phase) per node; zero outside the
// domain. phase(q, f, omega) already carries (s, z, t).
std::vector<CVec3> vector_coefficients(const AngularSpectrum& spec, const DispersionRelation& rel,
                                       int s, int freq_index, const KernelPhaseFn& phase) {
  const int n = spec.grid.n;
  const double omega = spec.freq.omegas.at(freq_index);
  const int si = s_index(s);
  std::vector<CVec3> coeff(spec.grid.nodes(), CVec3{});
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const double qx = spec.grid.coord(ix);
      const double qy = spec.grid.coord(iy);
      const double q = std::hypot(qx, qy);
      if (!in_domain(rel, q, omega)) continue;
      const std::size_t at = spec.flat(freq_index, iy, ix);
      const Complex a1 = spec.amps[0][si][at];
      const Complex a2 = spec.amps[1][si][at];
      if (a1 == Complex{} && a2 == Complex{}) continue;

      const PolarizationTriad tr = triad(rel, qx, qy, s, omega);
      const double weight = mode_weight(rel, q, omega);
      const double f = f_value(rel, q, omega);
      const Complex factor = std::polar(weight, phase(q, f, omega));
      const std::size_t node = spec.grid.flat(iy, ix);
      for (int c = 0; c < 3; ++c)
        coeff[node][c] = factor * (a1 * tr.eps1[c] + a2 * tr.eps2[c]);
    }
  }
  return coeff;
}

// Psi(x_m) = dq^2 sum_j G_j exp(+i q_j . x_m) on the paired spatial grid.
// With q_j = (j - n/2) dq, x_m = (m - n/2) dx and dx dq n = 2 pi this is
//   dq^2 (-1)^(mx+my) IDFT[(-1)^(jx+jy) G](m)      (n even),
// IDFT unnormalized with kernel exp(+2 pi i j m / n) = FFTW_BACKWARD.
FieldSlice synth_fft(const std::vector<CVec3>& coeff, const TransverseGrid& spectral,
                     const TransverseGrid& spatial, double z, double t) {
  const int n = spectral.n;
  FieldSlice slice = FieldSlice::zeros(spatial, z, t);
  std::vector<Complex> buf(spectral.nodes());
  fftw_plan plan =
      fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(buf.data()),
                       reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  const double dq2 = spectral.spacing * spectral.spacing;
  for (int c = 0; c < 3; ++c) {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double sign = ((ix + iy) % 2 == 0) ? 1.0 : -1.0;
        buf[spectral.flat(iy, ix)] = sign * coeff[spectral.flat(iy, ix)][c];
      }
    fftw_execute(plan);
    for (int my = 0; my < n; ++my)
      for (int mx = 0; mx < n; ++mx) {
        const double sign = ((mx + my) % 2 == 0) ? 1.0 : -1.0;
        slice.values[spatial.flat(my, mx)][c] = sign * dq2 * buf[spatial.flat(my, mx)];
      }
  }
  fftw_destroy_plan(plan);
  return slice;
}

// Reference path: plain double loop over output and spectral nodes.
FieldSlice synth_reference(const std::vector<CVec3>& coeff, const TransverseGrid& spectral,
                           const TransverseGrid& eval, double z, double t) {
  const int n = spectral.n;
  FieldSlice slice = FieldSlice::zeros(eval, z, t);
  const double dq2 = spectral.spacing * spectral.spacing;
  for (int my = 0; my < eval.n; ++my) {
    const double y = eval.coord(my);
    for (int mx = 0; mx < eval.n; ++mx) {
      const double x = eval.coord(mx);
      CVec3 acc{};
      for (int jy = 0; jy < n; ++jy) {
        const double qy = spectral.coord(jy);
        for (int jx = 0; jx < n; ++jx) {
          const CVec3& g = coeff[spectral.flat(jy, jx)];
          if (g[0] == Complex{} && g[1] == Complex{} && g[2] == Complex{}) continue;
          const Complex ph = std::polar(1.0, spectral.coord(jx) * x + qy * y);
          for (int c = 0; c < 3; ++c) acc[c] += g[c] * ph;
        }
      }
      for (int c = 0; c < 3; ++c) slice.values[eval.flat(my, mx)][c] = acc[c] * dq2;
    }
  }
  return slice;
}

// Row-column factorization of the reference sum; same terms, fewer
// exponentials. Used for stencil studies on free evaluation grids.
FieldSlice synth_factored(const std::vector<CVec3>& coeff, const TransverseGrid& spectral,
                          const TransverseGrid& eval, double z, double t) {
  const int n = spectral.n;
  const int ne = eval.n;
  FieldSlice slice = FieldSlice::zeros(eval, z, t);
  const double dq2 = spectral.spacing * spectral.spacing;

  std::vector<Complex> ex(static_cast<std::size_t>(n) * ne);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < ne; ++m)
      ex[static_cast<std::size_t>(j) * ne + m] = std::polar(1.0, spectral.coord(j) * eval.coord(m));

  std::vector<Complex> partial(static_cast<std::size_t>(n) * ne);
  for (int c = 0; c < 3; ++c) {
    std::fill(partial.begin(), partial.end(), Complex{});
    for (int jy = 0; jy < n; ++jy) {
      Complex* row = partial.data() + static_cast<std::size_t>(jy) * ne;
      for (int jx = 0; jx < n; ++jx) {
        const Complex g = coeff[spectral.flat(jy, jx)][c];
        if (g == Complex{}) continue;
        const Complex* e = ex.data() + static_cast<std::size_t>(jx) * ne;
        for (int m = 0; m < ne; ++m) row[m] += g * e[m];
      }
    }
    for (int my = 0; my < ne; ++my) {
      for (int jy = 0; jy < n; ++jy) {
        const Complex ey = ex[static_cast<std::size_t>(jy) * ne + my];
        const Complex* row = partial.data() + static_cast<std::size_t>(jy) * ne;
        for (int mx = 0; mx < ne; ++mx) slice.values[eval.flat(my, mx)][c] += row[mx] * ey;
      }
      for (int mx = 0; mx < ne; ++mx) slice.values[eval.flat(my, mx)][c] *= dq2;
    }
  }
  return slice;
}

}  // namespace

KernelPhaseFn kernel_phase_function(KernelKind kind, const UnitSystem& units, int s, double z,
                                    double t) {
  const double c = units.c;
  switch (kind) {
    case KernelKind::FresnelTI:
      return [c, s, z, t](double q, double /*f*/, double omega) {
        const double theta2 = q * c / (std::sqrt(2.0) * omega) * (q * c / (std::sqrt(2.0) * omega));
        return -s * q * q * c * z / (2.0 * omega) -
               omega * t * (std::sqrt(1.0 + theta2 * theta2) - 1.0);
      };
    case KernelKind::HalfFresnelTD:
      return [c, s, z, t](double q, double /*f*/, double omega) {
        return -(q * q * c / (4.0 * omega)) * (s * z + c * t);
      };
    case KernelKind::ExactAS:
      return [c, s, z](double /*q*/, double f, double omega) {
        const double cos_theta = f * c / omega;
        return -s * z * omega * (1.0 - cos_theta) / c;
      };
  }
  return nullptr;
}

namespace {

void set_metadata(FieldSlice& slice, const AngularSpectrum& spec, const char* kernel,
                  const char* path, const std::string& branch, double omega) {
  slice.metadata["kernel"] = kernel;
  slice.metadata["synthesis_path"] = path;
  slice.metadata["branch"] = branch;
  slice.metadata["omega"] = format_double(omega);
  slice.metadata["masked_power_fraction"] = format_double(spec.masked_power_fraction);
}

}  // namespace

const char* kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::FresnelTI: return "fresnel_ti";
    case KernelKind::HalfFresnelTD: return "half_fresnel_td";
    case KernelKind::ExactAS: return "exact_as";
  }
  return "?";
}

DispersionKind kernel_dispersion(KernelKind kind) {
  switch (kind) {
    case KernelKind::FresnelTI: return DispersionKind::TimeIndependentParaxial;
    case KernelKind::HalfFresnelTD: return DispersionKind::TimeDependentParaxial;
    case KernelKind::ExactAS: return DispersionKind::Exact;
  }
  return DispersionKind::Exact;
}

double kernel_phase(KernelKind kind, const DispersionRelation& rel, double q, double omega,
                    int s, double z, double t) {
  require_kind_match(kind, rel);
  const double f = f_value(rel, q, omega);  // also validates the domain
  return kernel_phase_function(kind, rel.units, s, z, t)(q, f, omega);
}

double envelope_phase(const DispersionRelation& rel, double q, double omega, int s, double z,
                      double t) {
  const double f = f_value(rel, q, omega);
  const double c = rel.units.c;
  return z * s * (f - omega / c) - t * (c * std::hypot(q, f) - omega);
}

FieldSlice envelope_slice(const AngularSpectrum& spec, const DispersionRelation& rel,
                          KernelKind kind, int s, double z, double t, int freq_index,
                          SynthesisPath path) {
  require_kind_match(kind, rel);
  GridPair pair = make_paired_grids(spec.grid.n, spec.grid.limit);
  if (!grids_paired(spec.grid, pair.spatial))
    throw InvalidArgumentError("spectral grid is not reciprocity-consistent");

  auto coeff = vector_coefficients(spec, rel, s, freq_index, kernel_phase_function(kind, rel.units, s, z, t));
  FieldSlice slice = path == SynthesisPath::Fft
                         ? synth_fft(coeff, spec.grid, pair.spatial, z, t)
                         : synth_reference(coeff, spec.grid, pair.spatial, z, t);
  set_metadata(slice, spec, kernel_name(kind),
               path == SynthesisPath::Fft ? "fft" : "direct_quadrature", std::to_string(s),
               spec.freq.omegas.at(freq_index));
  slice.metadata["field"] = "envelope";
  return slice;
}

FieldSlice envelope_on_grid(const AngularSpectrum& spec, const DispersionRelation& rel,
                            KernelKind kind, int s, double z, double t, int freq_index,
                            const TransverseGrid& eval) {
  require_kind_match(kind, rel);
  auto coeff = vector_coefficients(spec, rel, s, freq_index, kernel_phase_function(kind, rel.units, s, z, t));
  FieldSlice slice = synth_factored(coeff, spec.grid, eval, z, t);
  set_metadata(slice, spec, kernel_name(kind), "direct_factored", std::to_string(s),
               spec.freq.omegas.at(freq_index));
  slice.metadata["field"] = "envelope";
  return slice;
}

FieldSlice envelope_on_grid_with_phase(const AngularSpectrum& spec, const DispersionRelation& rel,
                                       int s, int freq_index, const TransverseGrid& eval,
                                       const KernelPhaseFn& phase, double z, double t) {
  auto coeff = vector_coefficients(spec, rel, s, freq_index, phase);
  FieldSlice slice = synth_factored(coeff, spec.grid, eval, z, t);
  set_metadata(slice, spec, "custom_phase", "direct_factored", std::to_string(s),
               spec.freq.omegas.at(freq_index));
  slice.metadata["field"] = "envelope";
  return slice;
}

namespace {

// A(+) = sum_s sum_omega w e^{-i omega (t - s z/c)} Psi_s, with the envelope
// synthesized by `synth`.
template <typename Synth>
FieldSlice accumulate_field(const AngularSpectrum& spec, const DispersionRelation& rel,
                            KernelKind kind, double z, double t, const TransverseGrid& out_grid,
                            Synth&& synth) {
  FieldSlice total = FieldSlice::zeros(out_grid, z, t);
  const double c = rel.units.c;
  for (int si = 0; si < 2; ++si) {
    const int s = s_from_index(si);
    for (int iw = 0; iw < spec.freq.count(); ++iw) {
      const double omega = spec.freq.omegas[iw];
      const Complex carrier =
          spec.freq.weights[iw] * std::polar(1.0, -omega * (t - s * z / c));
      FieldSlice env = synth(s, iw);
      for (std::size_t node = 0; node < total.values.size(); ++node)
        for (int comp = 0; comp < 3; ++comp)
          total.values[node][comp] += carrier * env.values[node][comp];
    }
  }
  set_metadata(total, spec, kernel_name(kind), "", "all", spec.freq.omegas.front());
  total.metadata["field"] = "positive_frequency";
  return total;
}

}  // namespace

FieldSlice field_slice(const AngularSpectrum& spec, const DispersionRelation& rel,
                       KernelKind kind, double z, double t, SynthesisPath path) {
  require_kind_match(kind, rel);
  GridPair pair = make_paired_grids(spec.grid.n, spec.grid.limit);
  FieldSlice out = accumulate_field(spec, rel, kind, z, t, pair.spatial, [&](int s, int iw) {
    return envelope_slice(spec, rel, kind, s, z, t, iw, path);
  });
  out.metadata["synthesis_path"] = path == SynthesisPath::Fft ? "fft" : "direct_quadrature";
  return out;
}

FieldSlice field_on_grid(const AngularSpectrum& spec, const DispersionRelation& rel,
                         KernelKind kind, double z, double t, const TransverseGrid& eval) {
  require_kind_match(kind, rel);
  FieldSlice out = accumulate_field(spec, rel, kind, z, t, eval, [&](int s, int iw) {
    return envelope_on_grid(spec, rel, kind, s, z, t, iw, eval);
  });
  out.metadata["synthesis_path"] = "direct_factored";
  return out;
}

AngularSpectrum propagate_spectrum(const AngularSpectrum& spec, const DispersionRelation& rel,
                                   KernelKind kind, double z, double t) {
  require_kind_match(kind, rel);
  AngularSpectrum out = spec;
  const int n = spec.grid.n;
  for (int si = 0; si < 2; ++si) {
    const int s = s_from_index(si);
    const KernelPhaseFn phase = kernel_phase_function(kind, rel.units, s, z, t);
    for (int iw = 0; iw < spec.freq.count(); ++iw) {
      const double omega = spec.freq.omegas[iw];
      for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
          const double q = std::hypot(spec.grid.coord(ix), spec.grid.coord(iy));
          if (!in_domain(rel, q, omega)) continue;
          const std::size_t at = spec.flat(iw, iy, ix);
          const Complex factor = std::polar(1.0, phase(q, f_value(rel, q, omega), omega));
          out.amps[0][si][at] *= factor;
          out.amps[1][si][at] *= factor;
        }
      }
    }
  }
  return out;
}

std::pair<double, double> fubini_totals(const AngularSpectrum& spec,
                                        const DispersionRelation& rel) {
  const int n = spec.grid.n;
  const double dq2 = spec.grid.spacing * spec.grid.spacing;

  auto node_power = [&](int iw, int iy, int ix) {
    const std::size_t at = spec.flat(iw, iy, ix);
    double amp2 = 0.0;
    for (const auto& per_lambda : spec.amps)
      for (const auto& a : per_lambda) amp2 += std::norm(a[at]);
    return amp2 * dq2 * spec.freq.weights[iw];
  };

  // q outer, omega inner over I_omega(f, q)
  double q_outer = 0.0;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double q = std::hypot(spec.grid.coord(ix), spec.grid.coord(iy));
      for (int iw = 0; iw < spec.freq.count(); ++iw)
        if (in_domain(rel, q, spec.freq.omegas[iw])) q_outer += node_power(iw, iy, ix);
    }

  // omega outer, q inner over C_q(f, omega)
  double w_outer = 0.0;
  for (int iw = 0; iw < spec.freq.count(); ++iw)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double q = std::hypot(spec.grid.coord(ix), spec.grid.coord(iy));
        if (in_domain(rel, q, spec.freq.omegas[iw])) w_outer += node_power(iw, iy, ix);
      }

  return {q_outer, w_outer};
}

}  // namespace asbeam
