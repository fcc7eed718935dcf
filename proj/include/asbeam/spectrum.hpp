#pragma once

#include <map>
#include <string>
#include <vector>

#include "asbeam/common.hpp"
#include "asbeam/dispersion.hpp"
#include "asbeam/grid.hpp"

namespace asbeam {

inline int s_index(int s) { return s > 0 ? 0 : 1; }
inline int s_from_index(int idx) { return idx == 0 ? +1 : -1; }

// Complex amplitudes a_{lambda s}(q, omega) on a spectral grid x frequency
// grid, per polarization lambda in {1, 2} and branch s in {+1, -1}.
// Amplitudes are exactly zero at nodes outside C_q(f, omega); |a|^2 dq^2 domega
// is a dimensionless mode occupation.
struct AngularSpectrum {
  TransverseGrid grid;  // spectral
  FrequencyGrid freq;
  // amps[lambda][s_index], flat index (iw * n + iy) * n + ix
  std::array<std::array<std::vector<Complex>, 2>, 2> amps;

  double masked_power_fraction = 0.0;
  bool clipping_warning = false;

  static AngularSpectrum zeros(const TransverseGrid& grid, const FrequencyGrid& freq);

  std::size_t node_count() const { return static_cast<std::size_t>(freq.count()) * grid.nodes(); }
  std::size_t flat(int iw, int iy, int ix) const {
    return (static_cast<std::size_t>(iw) * grid.n + iy) * grid.n + ix;
  }
  Complex& at(int lambda, int s, int iw, int iy, int ix) {
    return amps[lambda][s_index(s)][flat(iw, iy, ix)];
  }
  const Complex& at(int lambda, int s, int iw, int iy, int ix) const {
    return amps[lambda][s_index(s)][flat(iw, iy, ix)];
  }

  bool all_finite() const;
};

// Zeroes every node outside the domain of rel; returns the fraction of
// |a|^2-power removed.
double apply_mask(AngularSpectrum& spec, const DispersionRelation& rel);

// Plane-wave amplitudes a_lambda(k_s) on the (kx, ky, zeta) grid induced by a
// frequency grid through zeta = f(q, omega). zeta varies per transverse node.
struct KSpaceAmplitude {
  TransverseGrid grid;  // spectral, shared with the source spectrum
  FrequencyGrid freq;   // the omega grid the zeta layers derive from
  std::vector<double> zetas;  // per (iw, iy, ix) node; 0 where amplitude is 0
  std::array<std::array<std::vector<Complex>, 2>, 2> amps;

  std::size_t flat(int iw, int iy, int ix) const {
    return (static_cast<std::size_t>(iw) * grid.n + iy) * grid.n + ix;
  }
};

// How the sqrt(df/domega) rescaling of the change of variables is
// discretized. Analytic uses df/domega at the node; ForwardDifference uses
// the grid increment (f(q, omega + dw) - f(q, omega)) / dw, which makes the
// discrete spectral measure |a|^2 dzeta identical to |a~|^2 domega node by
// node.
enum class JacobianScaling { Analytic, ForwardDifference };

// f(q, omega + dw) - f(q, omega); positive by monotonicity.
double forward_zeta_step(const DispersionRelation& rel, double q, double omega, double dw);

KSpaceAmplitude from_angular_spectrum(const AngularSpectrum& spec, const DispersionRelation& rel,
                                      JacobianScaling scaling = JacobianScaling::Analytic);

// Inverse map: omega solved from zeta = f(q, omega), amplitude scaled by
// sqrt(df/domega), accumulated onto the nearest node of the target frequency
// grid. resample_error, when given, receives max |omega_solved - omega_node|.
AngularSpectrum to_angular_spectrum(const KSpaceAmplitude& kamp, const DispersionRelation& rel,
                                    const FrequencyGrid& target,
                                    JacobianScaling scaling = JacobianScaling::Analytic,
                                    double* resample_error = nullptr);

// Discretization of the zeta measure element in the k-space sum of
// measure_invariance. PerNode uses the exact grid increment
// f(q, omega + dw) - f(q, omega); Midpoint uses df/domega at omega + dw/2
// times dw (second-order accurate in dw).
enum class DeltaZetaRule { PerNode, Midpoint };

// | sum |a(k)|^2 d2q dzeta - sum |a~|^2 d2q domega | / sum |a~|^2 d2q domega.
// Zero spectra return 0.
double measure_invariance(const AngularSpectrum& spec, const KSpaceAmplitude& kamp,
                          const DispersionRelation& rel, DeltaZetaRule rule);

// ---- test-signal sources ----------------------------------------------------

enum class SourceKind { Gaussian, RingDelta, NodeImpulse };

// How the polarization weights (c1, c2) are applied.
//   TriadWeights: a_lambda = c_lambda * profile, directly in the
//     (eps1, eps2) basis of Eq.-style triads. Note that a q-independent
//     weighting in this basis carries the basis' own angular structure
//     (radial/azimuthal character), not a uniform transverse polarization.
//   TransverseProjection: a_lambda = (p . eps_lambda) * profile with
//     p = c1 xhat + c2 yhat, i.e. the beam approximates a uniformly
//     polarized field; amplitudes are smooth across q = 0.
enum class PolarizationConvention { TriadWeights, TransverseProjection };

struct BeamSource {
  SourceKind kind = SourceKind::Gaussian;
  double waist = 0.0;        // Gaussian, spatial units
  double ring_radius = 0.0;  // RingDelta, spectral units
  int node_ix = 0, node_iy = 0;  // NodeImpulse
  Complex c1{1.0, 0.0}, c2{0.0, 0.0};  // |c1|^2 + |c2|^2 = 1
  int s = +1;
  PolarizationConvention polarization = PolarizationConvention::TriadWeights;
  // Divide amplitudes by mode_weight(q, omega), so the synthesized envelope
  // carries the bare profile; used by the Gaussian-beam oracle.
  bool flatten_mode_weight = false;
};

// Builds a masked spectrum normalized to unit occupation
// (sum |a|^2 dq^2 domega = 1). Records a clipping warning when mask or grid
// extent removes more than 1% of the analytic Gaussian power.
AngularSpectrum make_source(const BeamSource& src, const TransverseGrid& spectral,
                            const FrequencyGrid& freq, const DispersionRelation& rel);

}  // namespace asbeam
