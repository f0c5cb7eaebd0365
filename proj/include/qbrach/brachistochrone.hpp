#pragma once

// Optimal-speed Hamiltonians: given a metric, an initial and a final ray and
// a fixed spectral radius E, build the Hamiltonian with spectrum {-E, +E}
// (plus zeros off the span) that carries the initial ray to the final one in
// the least time tau = hbar s / E.

#include <optional>

#include "qbrach/geometry.hpp"

namespace qbrach {

struct EnergyScale {
  double energy = 1.0;  // E, half the spectral gap
  double hbar = 1.0;
};

// Overlaps with cos s above this are treated as the same ray; the
// construction is ill-conditioned beyond it.
inline constexpr double kCoincidentCosThreshold = 1.0 - 1e-10;

// Overlaps with cos s below this count as antipodal.
inline constexpr double kAntipodalCosThreshold = 1e-14;

struct BrachistochroneResult {
  Matrix hamiltonian;
  double tau_min = 0.0;
  double s = 0.0;
  // Metric inner product of the supplied representatives; with inputs in the
  // affine chart convention (psi_i = e1, psi_f = (zeta, 1)) this is
  // a zeta + conj(b).
  Complex xi = Complex(0.0, 0.0);
  double omega = 0.0;  // arg xi, 0 when antipodal
  bool antipodal = false;
  // Phase-fixed eigenvectors: <psi_minus|psi_i>_eta is real and positive.
  Vector eigenvector_minus;  // eigenvalue -E
  Vector eigenvector_plus;   // eigenvalue +E
};

// Spectral construction from an eta-orthonormal eigenvector pair. This is
// the reference path: its output defines the optimal Hamiltonian that the
// closed forms below are checked against. For antipodal rays every relative
// phase gives a valid geodesic; the representatives are then phase-fixed by
// canonicalize, which matches omega = 0 in the chart convention.
BrachistochroneResult construct_spectral(const MetricOperator& metric, const Vector& psi_i,
                                         const Vector& psi_f, const EnergyScale& scale = {});

// Projector closed form
//   H = prefactor_scale * (i E cot(s) / 4)
//       (|psi_f><psi_i| / <psi_i|psi_f> - |psi_i><psi_f| / <psi_f|psi_i>)
// with metric brackets. The literal prefactor (prefactor_scale = 1) yields
// spectrum {-E/4, +E/4} and a quarter of the optimal generator;
// prefactor_scale = 4 (default) reproduces construct_spectral.
Matrix construct_closed_form(const MetricOperator& metric, const Vector& psi_i,
                             const Vector& psi_f, const EnergyScale& scale = {},
                             double prefactor_scale = 4.0);

struct Explicit2x2Result {
  Matrix hamiltonian;
  double tau = 0.0;
  Complex xi = Complex(0.0, 0.0);  // a zeta + conj(b)
  double omega = 0.0;
};

// Entrywise 2x2 form in the affine chart (psi_i = e1, psi_f = (zeta, 1)):
//   H = prefactor_scale * (i E e^{-i omega} / (4 a sqrt(d)))
//       [[-a conj(b), -(d e^{2 i omega} + conj(b)^2)], [a^2, a conj(b)]]
// xi = 0 has no distinguished omega; pass omega_override to pick a geodesic.
Explicit2x2Result construct_explicit_2x2(const MetricParams2x2& params, Complex zeta,
                                         const EnergyScale& scale = {},
                                         double prefactor_scale = 4.0,
                                         std::optional<double> omega_override = {});

// tau = (hbar / E) arccos(|xi| / sqrt(d + |xi|^2)); defined for every zeta.
double explicit_tau_min(const MetricParams2x2& params, Complex zeta,
                        const EnergyScale& scale = {});

// hbar s / E for the given ray pair.
double tau_min(const MetricOperator& metric, const Vector& psi_i, const Vector& psi_f,
               const EnergyScale& scale = {});

}  // namespace qbrach
