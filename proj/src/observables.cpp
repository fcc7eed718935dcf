#include "asbeam/observables.hpp"

#include <cmath>

namespace asbeam {

EnergyReport energy(const AngularSpectrum& spec, const DispersionRelation& rel) {
  const int n = spec.grid.n;
  const double dq2 = spec.grid.spacing * spec.grid.spacing;
  const double hbar = rel.units.hbar;

  EnergyReport report;
  std::array<std::array<std::vector<double>, 2>, 2> terms;  // [lambda][s]
  std::vector<double> ck_terms, occ_terms;

  for (int iw = 0; iw < spec.freq.count(); ++iw) {
    const double omega = spec.freq.omegas[iw];
    const double dw = spec.freq.weights[iw];
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double q = std::hypot(spec.grid.coord(ix), spec.grid.coord(iy));
        if (!in_domain(rel, q, omega)) continue;
        const double ck = plane_wave_frequency(rel, q, omega);
        const std::size_t at = spec.flat(iw, iy, ix);
        for (int lam = 0; lam < 2; ++lam) {
          for (int si = 0; si < 2; ++si) {
            const double occ = std::norm(spec.amps[lam][si][at]) * dq2 * dw;
            if (occ == 0.0) continue;
            terms[lam][si].push_back(hbar * ck * occ);
            ck_terms.push_back(ck * occ);
            occ_terms.push_back(occ);
          }
        }
      }
    }
  }

  for (int lam = 0; lam < 2; ++lam) {
    for (int si = 0; si < 2; ++si) {
      const double e = pairwise_sum(terms[lam][si]);
      report.per_lambda[lam] += e;
      report.per_s[si] += e;
    }
  }
  report.total = report.per_s[0] + report.per_s[1];
  const double occ = pairwise_sum(occ_terms);
  report.mean_ck = occ > 0.0 ? pairwise_sum(ck_terms) / occ : 0.0;
  return report;
}

double occupation(const AngularSpectrum& spec) {
  const double dq2 = spec.grid.spacing * spec.grid.spacing;
  std::vector<double> terms;
  terms.reserve(spec.node_count());
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

std::pair<double, double> beam_width(const FieldSlice& slice) {
  const int n = slice.grid.n;
  std::vector<double> p, px, py;
  p.reserve(slice.values.size());
  for (int iy = 0; iy < n; ++iy) {
    const double y = slice.grid.coord(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double x = slice.grid.coord(ix);
      const CVec3& v = slice.values[slice.grid.flat(iy, ix)];
      const double intensity = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
      p.push_back(intensity);
      px.push_back(intensity * x);
      py.push_back(intensity * y);
    }
  }
  const double power = pairwise_sum(p);
  if (!(power > 0.0)) throw InvalidArgumentError("beam_width of an all-zero slice");
  const double mx = pairwise_sum(px) / power;
  const double my = pairwise_sum(py) / power;

  std::vector<double> vx, vy;
  vx.reserve(p.size());
  std::size_t i = 0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = slice.grid.coord(iy);
    for (int ix = 0; ix < n; ++ix, ++i) {
      const double x = slice.grid.coord(ix);
      vx.push_back(p[i] * (x - mx) * (x - mx));
      vy.push_back(p[i] * (y - my) * (y - my));
    }
  }
  // w^2 = 4 Var
  return {2.0 * std::sqrt(pairwise_sum(vx) / power), 2.0 * std::sqrt(pairwise_sum(vy) / power)};
}

}  // namespace asbeam
