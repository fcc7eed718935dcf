#pragma once

#include <utility>

#include "asbeam/common.hpp"
#include "asbeam/dispersion.hpp"
#include "asbeam/field.hpp"
#include "asbeam/modes.hpp"
#include "asbeam/spectrum.hpp"

namespace asbeam {

// Momentum-space propagation kernels, one per dispersion branch. Kernel
// values are unimodular; the phases are
//   FresnelTI:     -s q^2 c z / (2 omega) - omega t (sqrt(1 + theta^4) - 1)
//   HalfFresnelTD: -(q^2 c / (4 omega)) (s z + c t)
//   ExactAS:       -s z omega (1 - |cos(theta)|) / c,  |cos(theta)| = f c / omega
enum class KernelKind { FresnelTI, HalfFresnelTD, ExactAS };

const char* kernel_name(KernelKind kind);
DispersionKind kernel_dispersion(KernelKind kind);

// Throws KindMismatchError unless rel.kind == kernel_dispersion(kind).
double kernel_phase(KernelKind kind, const DispersionRelation& rel, double q, double omega,
                    int s, double z, double t);

// The same phase as a reusable function of (q, f, omega). The f argument is
// supplied by the caller's synthesis loop, which lets studies apply one
// kernel's phase on another branch's spectrum.
using KernelPhaseFn = std::function<double(double q, double f, double omega)>;
KernelPhaseFn kernel_phase_function(KernelKind kind, const UnitSystem& units, int s, double z,
                                    double t);

// The generic envelope phase z s (f - omega/c) - t (c sqrt(q^2+f^2) - omega),
// valid for any relation; each closed-form kernel phase equals this for its
// own dispersion branch.
double envelope_phase(const DispersionRelation& rel, double q, double omega, int s, double z,
                      double t);

enum class SynthesisPath { Fft, DirectQuadrature };

// Envelope Psi_s(x, y; z, t) at one carrier frequency, on the spatial grid
// paired with the spectrum's spectral grid. Three scalar inverse DFTs (one
// per Cartesian component) with Riemann normalization dq^2; synthesis uses
// exp(+i q.x). The DirectQuadrature path is the plane-wave reference double
// loop.
FieldSlice envelope_slice(const AngularSpectrum& spec, const DispersionRelation& rel,
                          KernelKind kind, int s, double z, double t, int freq_index = 0,
                          SynthesisPath path = SynthesisPath::Fft);

// Same envelope evaluated on an arbitrary spatial grid by factored direct
// summation (exact reordering of the reference sum).
FieldSlice envelope_on_grid(const AngularSpectrum& spec, const DispersionRelation& rel,
                            KernelKind kind, int s, double z, double t, int freq_index,
                            const TransverseGrid& eval);

// Envelope with an arbitrary kernel phase phi(q, f, omega); lets studies
// compare kernel phases on one common spectrum.
FieldSlice envelope_on_grid_with_phase(const AngularSpectrum& spec, const DispersionRelation& rel,
                                       int s, int freq_index, const TransverseGrid& eval,
                                       const KernelPhaseFn& phase, double z, double t);

// Positive-frequency field A(+) = sum_s sum_omega w e^{-i omega (t - s z/c)} Psi_s.
FieldSlice field_slice(const AngularSpectrum& spec, const DispersionRelation& rel,
                       KernelKind kind, double z, double t,
                       SynthesisPath path = SynthesisPath::Fft);

FieldSlice field_on_grid(const AngularSpectrum& spec, const DispersionRelation& rel,
                         KernelKind kind, double z, double t, const TransverseGrid& eval);

// Applies the kernel in place on the spectrum amplitudes (a -> a e^{i phi}).
AngularSpectrum propagate_spectrum(const AngularSpectrum& spec, const DispersionRelation& rel,
                                   KernelKind kind, double z, double t);

// sum |a|^2 dq^2 domega evaluated in both iteration orders of the domain
// identity: (q outer, omega inner over I_omega) and (omega outer, q inner
// over C_q).
std::pair<double, double> fubini_totals(const AngularSpectrum& spec,
                                        const DispersionRelation& rel);

}  // namespace asbeam
