#pragma once

// Schroedinger flow under a (possibly pseudo-Hermitian) Hamiltonian:
// propagation, trajectory sampling with accumulated path length, measured
// speed and first-arrival search.

#include <optional>

#include "qbrach/brachistochrone.hpp"

namespace qbrach {

struct Trajectory {
  double hbar = 1.0;
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> speed;               // Delta E / hbar per sample
  std::vector<double> accumulated_s;       // Simpson prefix of speed over time
  std::vector<double> eta_norm;            // <psi|psi>_eta per sample
  std::vector<double> fidelity_to_target;  // empty without a target
};

// exp(-i t H / hbar) psi_i, recomputed from t = 0 (no step-error
// accumulation). Dimension 2 uses the exact closed form; larger dimensions
// go through matrix_exponential.
Vector propagate(const Matrix& h, const Vector& psi_i, double t, double hbar = 1.0);

// Uniform grid with `steps` intervals on [0, t_final]. The accumulated path
// length integrates each interval by Simpson with a midpoint evaluation, so
// it is monotone for non-negative speed and fourth-order accurate.
Trajectory sample_trajectory(const MetricOperator& metric, const Matrix& h,
                             const Vector& psi_i, double t_final, int steps,
                             double hbar = 1.0, const std::optional<Ray>& target = {});

// Central-difference geodesic speed between consecutive sampled rays;
// one-sided at the ends.
std::vector<double> measured_speed(const MetricOperator& metric, const Trajectory& traj);

// Smallest time in [0, t_max] with ray fidelity >= 1 - tol against the
// target, scanned on `grid` points and refined by bisection to 1e-10.
// Empty when the threshold is never reached.
std::optional<double> time_to_target(const MetricOperator& metric, const Matrix& h,
                                     const Vector& psi_i, const Ray& target, double hbar,
                                     double t_max, double tol, int grid = 4096);

// Composite Simpson over the stored samples.
double path_length(const Trajectory& traj);

}  // namespace qbrach
