#pragma once

#include <string>
#include <vector>

#include "asbeam/common.hpp"
#include "asbeam/propagation.hpp"
#include "asbeam/spectrum.hpp"

namespace asbeam {

struct VerificationReport {
  std::string name;
  double residual_norm = 0.0;
  double reference_norm = 0.0;
  double relative_residual = 0.0;
  double convergence_order = 0.0;
  bool has_order = false;
  double tolerance = 0.0;
  bool passed = false;
};

// relative = residual / max(reference, 1e-300)
double relative_residual(double residual_norm, double reference_norm);

// Evaluation geometry for stencil residuals: n_eval^2 nodes over
// [-extent, extent]^2, longitudinal step hz, time step ht. Spacings are
// independent of any spectral grid.
struct ResidualGrid {
  int n_eval = 64;
  double extent = 40.0;
  double hz = 0.02;
  double ht = 0.02;
};

// Residual of the time-independent paraxial equation
//   (dxx + dyy) Psi + 2 i s (omega/c) dz Psi = 0
// with second-order central differences at t = 0, over the interior
// excluding a 2-node border. reference_norm is the largest single-term norm.
VerificationReport residual_ti_paraxial(const AngularSpectrum& spec,
                                        const DispersionRelation& rel, int s, int freq_index,
                                        double z, const ResidualGrid& g, double tolerance);

// Time-dependent paraxial equation: adds 2 i (omega/c^2) dt Psi.
VerificationReport residual_td_paraxial(const AngularSpectrum& spec,
                                        const DispersionRelation& rel, int s, int freq_index,
                                        double z, double t, const ResidualGrid& g,
                                        double tolerance);

// d'Alembert residual (laplacian - c^-2 dtt) A(+), componentwise, on the
// synthesized positive-frequency field.
VerificationReport residual_dalembert(const AngularSpectrum& spec, const DispersionRelation& rel,
                                      KernelKind kind, double z, double t, const ResidualGrid& g,
                                      double tolerance);

// Negative control: analytic plane wave exp(i(q.x + s zeta z - Omega t)) with
// zeta scaled away from f(q, omega) while Omega keeps the true c|k|. With
// zeta_scale = 1 this is an exact solution and the residual is pure stencil
// error.
VerificationReport residual_dalembert_plane_wave(const DispersionRelation& rel, double qx,
                                                 double qy, double omega, int s,
                                                 double zeta_scale, double z, double t,
                                                 const ResidualGrid& g, double tolerance);

// Runs a residual at (g) and at (2 n_eval, hz/2, ht/2) and reports the
// fine-level residual with the measured order log2(coarse/fine).
template <typename F>
VerificationReport with_convergence_order(F&& run, const ResidualGrid& g, double min_order) {
  ResidualGrid fine = g;
  fine.n_eval = 2 * g.n_eval;
  fine.hz = 0.5 * g.hz;
  fine.ht = 0.5 * g.ht;
  VerificationReport coarse = run(g);
  VerificationReport report = run(fine);
  report.has_order = true;
  report.convergence_order =
      std::log2(coarse.relative_residual / std::max(report.relative_residual, 1e-300));
  report.passed = report.passed && report.convergence_order >= min_order;
  return report;
}

struct ParaxialLimitRow {
  double q_lim = 0.0;
  double rel_l2_diff = 0.0;
};

struct ParaxialLimitTable {
  std::vector<ParaxialLimitRow> rows;
  double fitted_exponent = 0.0;
};

// Relative L2 difference between two kernel phases applied to one common
// exact-dispersion Gaussian spectrum, per q_lim, with a least-squares
// power-law exponent. The source waist scales as waist_qlim_product / q_lim
// so the angular shape is fixed while the aperture shrinks.
ParaxialLimitTable paraxial_limit_study(const UnitSystem& units, double omega, double z,
                                        const std::vector<double>& q_lims, KernelKind kernel_a,
                                        KernelKind kernel_b, int n_grid = 64, int n_eval = 64,
                                        double waist_qlim_product = 6.0);

// Self-contained verification checks over standard fixtures; every report
// carries its metric in relative_residual (smaller is better) and the pinned
// tolerance it was judged against.
namespace checks {

// f >= 0 and analytic vs independent finite-difference Jacobian on random
// in-domain samples, omega in [0.5, 2] * omega_scale.
VerificationReport jacobian_fd_agreement(const UnitSystem& units, DispersionKind kind,
                                         int n_samples, std::uint64_t seed,
                                         double omega_scale = 1.0);

// closed-form c|k| against c sqrt(q^2 + f^2)
VerificationReport plane_wave_frequency_closure(const UnitSystem& units, DispersionKind kind,
                                                int n_samples, std::uint64_t seed,
                                                double omega_scale = 1.0);

// orthonormality, right-handedness, transversality at every masked-in node
VerificationReport triad_orthonormality(const UnitSystem& units, DispersionKind kind, int n,
                                        double q_lim, double omega);

// to_angular_spectrum . from_angular_spectrum = identity
VerificationReport roundtrip_identity(const UnitSystem& units, DispersionKind kind, double omega);

VerificationReport invariance_per_node(const UnitSystem& units, DispersionKind kind,
                                       double omega);

// midpoint delta-zeta discrepancy order under domega halving
VerificationReport invariance_midpoint_order(const UnitSystem& units, DispersionKind kind,
                                             double omega, double min_order);

// energy and occupation drift under the branch kernel at several (z, t)
VerificationReport conservation_under_kernel(const UnitSystem& units, KernelKind kernel,
                                             double omega);

VerificationReport fft_direct_agreement(const UnitSystem& units, KernelKind kernel, int n,
                                        double omega);

VerificationReport fubini_agreement(const UnitSystem& units, DispersionKind kind, double omega);

// second-moment width of a weight-flattened transverse-projection Gaussian
// against w0 sqrt(1 + (z/zR)^2); the width transverse to the polarization
// axis isolates the scalar Fresnel kernel (see README)
VerificationReport gaussian_width_oracle(const UnitSystem& units, double w0, double q_lim, int n,
                                         const std::vector<double>& zs, double omega);

VerificationReport paraxial_exponent(const UnitSystem& units, double omega, double z,
                                     const std::vector<double>& q_lims);

// PDE residual with measured convergence order for the branch of `kind`
VerificationReport pde_residual_order(const UnitSystem& units, DispersionKind kind, double omega,
                                      const ResidualGrid& grid, double z, double t,
                                      double tolerance, double min_order);

VerificationReport dalembert_residual_order(const UnitSystem& units, KernelKind kernel,
                                            double omega, const ResidualGrid& grid, double z,
                                            double t, double tolerance, double min_order);

// plane wave with zeta scaled by 1.1 against the passing residual
VerificationReport negative_control_ratio(const UnitSystem& units, DispersionKind kind,
                                          double omega, const ResidualGrid& grid,
                                          double passing_residual);

}  // namespace checks

}  // namespace asbeam
