#include "asbeam/verify.hpp"

#include <cmath>

#include "asbeam/observables.hpp"

namespace asbeam {

double relative_residual(double residual_norm, double reference_norm) {
  return residual_norm / std::max(reference_norm, 1e-300);
}

namespace {

void require_eval_grid(const ResidualGrid& g) {
  if (g.n_eval - 4 < 5)
    throw InvalidArgumentError("residual grid too small: fewer than 5 interior nodes per axis");
  if (!(g.extent > 0.0) || !(g.hz > 0.0) || !(g.ht > 0.0))
    throw InvalidArgumentError("residual grid spacings must be positive");
}

// L2 norm over the interior (2-node border excluded; synthesized fields are
// not grid-periodic) of a complex 3-vector lattice, with cell measure h^2.
double interior_l2(const std::vector<CVec3>& field, int n, double h) {
  std::vector<double> terms;
  for (int iy = 2; iy < n - 2; ++iy)
    for (int ix = 2; ix < n - 2; ++ix) {
      const CVec3& v = field[static_cast<std::size_t>(iy) * n + ix];
      terms.push_back(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    }
  return std::sqrt(pairwise_sum(terms) * h * h);
}

std::vector<CVec3> transverse_laplacian(const FieldSlice& s) {
  const int n = s.grid.n;
  const double h2 = s.grid.spacing * s.grid.spacing;
  std::vector<CVec3> out(s.values.size(), CVec3{});
  for (int iy = 1; iy < n - 1; ++iy)
    for (int ix = 1; ix < n - 1; ++ix)
      for (int c = 0; c < 3; ++c)
        out[s.grid.flat(iy, ix)][c] =
            (s.at(iy, ix + 1)[c] + s.at(iy, ix - 1)[c] + s.at(iy + 1, ix)[c] +
             s.at(iy - 1, ix)[c] - 4.0 * s.at(iy, ix)[c]) / h2;
  return out;
}

std::vector<CVec3> central_difference(const FieldSlice& plus, const FieldSlice& minus,
                                      double step) {
  std::vector<CVec3> out(plus.values.size(), CVec3{});
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int c = 0; c < 3; ++c)
      out[i][c] = (plus.values[i][c] - minus.values[i][c]) / (2.0 * step);
  return out;
}

std::vector<CVec3> second_difference(const FieldSlice& plus, const FieldSlice& center,
                                     const FieldSlice& minus, double step) {
  std::vector<CVec3> out(center.values.size(), CVec3{});
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int c = 0; c < 3; ++c)
      out[i][c] =
          (plus.values[i][c] - 2.0 * center.values[i][c] + minus.values[i][c]) / (step * step);
  return out;
}

VerificationReport assemble_report(std::string name,
                                   const std::vector<std::vector<CVec3>>& terms, int n, double h,
                                   double tolerance) {
  std::vector<CVec3> residual(terms.front().size(), CVec3{});
  for (const auto& term : terms)
    for (std::size_t i = 0; i < residual.size(); ++i)
      for (int c = 0; c < 3; ++c) residual[i][c] += term[i][c];

  VerificationReport report;
  report.name = std::move(name);
  report.residual_norm = interior_l2(residual, n, h);
  for (const auto& term : terms)
    report.reference_norm = std::max(report.reference_norm, interior_l2(term, n, h));
  report.relative_residual = relative_residual(report.residual_norm, report.reference_norm);
  report.tolerance = tolerance;
  report.passed = report.relative_residual <= tolerance;
  return report;
}

void scale_term(std::vector<CVec3>& term, Complex factor) {
  for (auto& v : term)
    for (int c = 0; c < 3; ++c) v[c] *= factor;
}

}  // namespace

VerificationReport residual_ti_paraxial(const AngularSpectrum& spec,
                                        const DispersionRelation& rel, int s, int freq_index,
                                        double z, const ResidualGrid& g, double tolerance) {
  if (rel.kind != DispersionKind::TimeIndependentParaxial)
    throw KindMismatchError("residual_ti_paraxial needs the ti_paraxial relation");
  require_eval_grid(g);
  const TransverseGrid eval = make_eval_grid(g.n_eval, g.extent);
  const double omega = spec.freq.omegas.at(freq_index);

  const KernelKind kind = KernelKind::FresnelTI;
  FieldSlice center = envelope_on_grid(spec, rel, kind, s, z, 0.0, freq_index, eval);
  FieldSlice plus = envelope_on_grid(spec, rel, kind, s, z + g.hz, 0.0, freq_index, eval);
  FieldSlice minus = envelope_on_grid(spec, rel, kind, s, z - g.hz, 0.0, freq_index, eval);

  auto lap = transverse_laplacian(center);
  auto dz = central_difference(plus, minus, g.hz);
  scale_term(dz, Complex(0.0, 2.0 * s * omega / rel.units.c));
  return assemble_report("ti_paraxial_residual", {lap, dz}, eval.n, eval.spacing, tolerance);
}

VerificationReport residual_td_paraxial(const AngularSpectrum& spec,
                                        const DispersionRelation& rel, int s, int freq_index,
                                        double z, double t, const ResidualGrid& g,
                                        double tolerance) {
  if (rel.kind != DispersionKind::TimeDependentParaxial)
    throw KindMismatchError("residual_td_paraxial needs the td_paraxial relation");
  require_eval_grid(g);
  const TransverseGrid eval = make_eval_grid(g.n_eval, g.extent);
  const double omega = spec.freq.omegas.at(freq_index);
  const double c = rel.units.c;

  const KernelKind kind = KernelKind::HalfFresnelTD;
  FieldSlice center = envelope_on_grid(spec, rel, kind, s, z, t, freq_index, eval);
  FieldSlice zp = envelope_on_grid(spec, rel, kind, s, z + g.hz, t, freq_index, eval);
  FieldSlice zm = envelope_on_grid(spec, rel, kind, s, z - g.hz, t, freq_index, eval);
  FieldSlice tp = envelope_on_grid(spec, rel, kind, s, z, t + g.ht, freq_index, eval);
  FieldSlice tm = envelope_on_grid(spec, rel, kind, s, z, t - g.ht, freq_index, eval);

  auto lap = transverse_laplacian(center);
  auto dz = central_difference(zp, zm, g.hz);
  scale_term(dz, Complex(0.0, 2.0 * s * omega / c));
  auto dt = central_difference(tp, tm, g.ht);
  scale_term(dt, Complex(0.0, 2.0 * omega / (c * c)));
  return assemble_report("td_paraxial_residual", {lap, dz, dt}, eval.n, eval.spacing, tolerance);
}

namespace {

VerificationReport dalembert_from_slices(const FieldSlice& center, const FieldSlice& zp,
                                         const FieldSlice& zm, const FieldSlice& tp,
                                         const FieldSlice& tm, double c, const ResidualGrid& g,
                                         double tolerance, const std::string& name) {
  auto lap = transverse_laplacian(center);
  auto d2z = second_difference(zp, center, zm, g.hz);
  auto d2t = second_difference(tp, center, tm, g.ht);
  scale_term(d2t, Complex(-1.0 / (c * c), 0.0));
  return assemble_report(name, {lap, d2z, d2t}, center.grid.n, center.grid.spacing, tolerance);
}

}  // namespace

VerificationReport residual_dalembert(const AngularSpectrum& spec, const DispersionRelation& rel,
                                      KernelKind kind, double z, double t, const ResidualGrid& g,
                                      double tolerance) {
  require_eval_grid(g);
  const TransverseGrid eval = make_eval_grid(g.n_eval, g.extent);
  FieldSlice center = field_on_grid(spec, rel, kind, z, t, eval);
  FieldSlice zp = field_on_grid(spec, rel, kind, z + g.hz, t, eval);
  FieldSlice zm = field_on_grid(spec, rel, kind, z - g.hz, t, eval);
  FieldSlice tp = field_on_grid(spec, rel, kind, z, t + g.ht, eval);
  FieldSlice tm = field_on_grid(spec, rel, kind, z, t - g.ht, eval);
  return dalembert_from_slices(center, zp, zm, tp, tm, rel.units.c, g, tolerance,
                               std::string("dalembert_residual_") + kernel_name(kind));
}

VerificationReport residual_dalembert_plane_wave(const DispersionRelation& rel, double qx,
                                                 double qy, double omega, int s,
                                                 double zeta_scale, double z, double t,
                                                 const ResidualGrid& g, double tolerance) {
  require_eval_grid(g);
  const TransverseGrid eval = make_eval_grid(g.n_eval, g.extent);
  const double q = std::hypot(qx, qy);
  const double f = f_value(rel, q, omega);
  const double zeta = zeta_scale * f;
  const double big_omega = rel.units.c * std::hypot(q, f);  // true c|k|
  const Vec3 pol = triad(rel, qx, qy, s, omega).eps1;

  auto plane = [&](double zz, double tt) {
    FieldSlice slice = FieldSlice::zeros(eval, zz, tt);
    for (int iy = 0; iy < eval.n; ++iy)
      for (int ix = 0; ix < eval.n; ++ix) {
        const Complex ph = std::polar(
            1.0, qx * eval.coord(ix) + qy * eval.coord(iy) + s * zeta * zz - big_omega * tt);
        for (int c = 0; c < 3; ++c) slice.values[eval.flat(iy, ix)][c] = pol[c] * ph;
      }
    return slice;
  };

  return dalembert_from_slices(plane(z, t), plane(z + g.hz, t), plane(z - g.hz, t),
                               plane(z, t + g.ht), plane(z, t - g.ht), rel.units.c, g, tolerance,
                               "dalembert_plane_wave_control");
}

ParaxialLimitTable paraxial_limit_study(const UnitSystem& units, double omega, double z,
                                        const std::vector<double>& q_lims, KernelKind kernel_a,
                                        KernelKind kernel_b, int n_grid, int n_eval,
                                        double waist_qlim_product) {
  if (q_lims.size() < 3)
    throw InvalidArgumentError("paraxial_limit_study needs at least 3 q_lims");
  const DispersionRelation rel = DispersionRelation::exact(units);
  const int s = +1;

  ParaxialLimitTable table;
  for (double q_lim : q_lims) {
    GridPair grids = make_paired_grids(n_grid, q_lim);
    BeamSource src;
    src.kind = SourceKind::Gaussian;
    src.waist = waist_qlim_product / q_lim;
    src.polarization = PolarizationConvention::TransverseProjection;
    src.s = s;
    AngularSpectrum spec =
        make_source(src, grids.spectral, FrequencyGrid::monochromatic(omega), rel);

    const TransverseGrid eval = make_eval_grid(n_eval, 2.5 * src.waist);
    FieldSlice a = envelope_on_grid_with_phase(
        spec, rel, s, 0, eval, kernel_phase_function(kernel_a, units, s, z, 0.0), z, 0.0);
    FieldSlice b = envelope_on_grid_with_phase(
        spec, rel, s, 0, eval, kernel_phase_function(kernel_b, units, s, z, 0.0), z, 0.0);

    FieldSlice diff = a;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
      for (int c = 0; c < 3; ++c) diff.values[i][c] -= b.values[i][c];
    table.rows.push_back({q_lim, l2_norm(diff) / l2_norm(a)});
  }

  // least-squares slope of log(diff) vs log(q_lim); zero differences (e.g.
  // z = 0 or identical kernels) yield no exponent
  bool all_positive = true;
  for (const auto& row : table.rows) all_positive = all_positive && row.rel_l2_diff > 0.0;
  if (all_positive) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(table.rows.size());
    for (const auto& row : table.rows) {
      const double lx = std::log(row.q_lim);
      const double ly = std::log(row.rel_l2_diff);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    table.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return table;
}

}  // namespace asbeam
