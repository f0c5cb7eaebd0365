#include "qbrach/evolution.hpp"

#include <cmath>

namespace qbrach {

namespace {

// exp(-i t H / hbar) psi for 2x2 H, exact via the Cayley-Hamilton closed
// form: with H0 the traceless part and mu^2 = -det H0,
// exp(-i t H0 / hbar) = cos(theta) I - i (t/hbar) sinc(theta) H0,
// theta = mu t / hbar.
Vector propagate_2x2(const Matrix& h, const Vector& psi, double t, double hbar) {
  const Complex half_trace = 0.5 * (h(0, 0) + h(1, 1));
  const Complex d00 = h(0, 0) - half_trace;
  const Complex d11 = h(1, 1) - half_trace;
  const Complex det0 = d00 * d11 - h(0, 1) * h(1, 0);
  const Complex mu = std::sqrt(-det0);
  const Complex theta = mu * (t / hbar);

  const Complex cos_theta = std::cos(theta);
  Complex sinc;  // sin(theta)/theta, stable near zero
  if (std::abs(theta) < 1e-8) {
    const Complex t2 = theta * theta;
    sinc = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  } else {
    sinc = std::sin(theta) / theta;
  }

  const Vector h0psi = h * psi - half_trace * psi;
  const Complex global = std::exp(Complex(0.0, -1.0) * half_trace * (t / hbar));
  Vector out = cos_theta * psi + Complex(0.0, -t / hbar) * sinc * h0psi;
  out *= global;
  return out;
}

}  // namespace

Vector propagate(const Matrix& h, const Vector& psi_i, double t, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be strictly positive");
  if (h.dim() != psi_i.size()) throw DimensionMismatch();
  if (!all_finite(h) || !all_finite(psi_i))
    throw InvalidArgument("propagate requires finite operands");
  if (t == 0.0) return psi_i;
  if (h.dim() == 2) return propagate_2x2(h, psi_i, t, hbar);
  Matrix gen = h;
  gen *= Complex(0.0, -t / hbar);
  return matrix_exponential(gen) * psi_i;
}

Trajectory sample_trajectory(const MetricOperator& metric, const Matrix& h,
                             const Vector& psi_i, double t_final, int steps, double hbar,
                             const std::optional<Ray>& target) {
  if (steps < 2) throw TooFewSteps("sample_trajectory needs at least 2 steps");
  if (!(t_final > 0.0)) throw TooFewSteps("t_final must be strictly positive");
  if (h.dim() != metric.dim() || psi_i.size() != metric.dim()) throw DimensionMismatch();

  const double dt = t_final / steps;
  Trajectory traj;
  traj.hbar = hbar;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.speed.reserve(steps + 1);
  traj.accumulated_s.reserve(steps + 1);
  traj.eta_norm.reserve(steps + 1);
  if (target) traj.fidelity_to_target.reserve(steps + 1);

  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    Vector psi = propagate(h, psi_i, t, hbar);
    traj.times.push_back(t);
    traj.speed.push_back(energy_uncertainty(metric, h, psi) / hbar);
    traj.eta_norm.push_back(pseudo_inner(metric, psi, psi).real());
    if (target) traj.fidelity_to_target.push_back(
        ray_fidelity(metric, psi, target->representative));
    traj.states.push_back(std::move(psi));
  }

  traj.accumulated_s.push_back(0.0);
  for (int k = 0; k < steps; ++k) {
    const Vector mid = propagate(h, psi_i, (k + 0.5) * dt, hbar);
    const double f_mid = energy_uncertainty(metric, h, mid) / hbar;
    traj.accumulated_s.push_back(traj.accumulated_s.back() +
                                 dt / 6.0 *
                                     (traj.speed[k] + 4.0 * f_mid + traj.speed[k + 1]));
  }
  return traj;
}

std::vector<double> measured_speed(const MetricOperator& metric, const Trajectory& traj) {
  const std::size_t n = traj.states.size();
  if (n < 3) throw TooFewSamples("measured_speed needs at least 3 samples");
  const double dt = (traj.times.back() - traj.times.front()) / (n - 1);
  if (!(dt > 0.0)) throw Error("time grid must be strictly increasing");

  std::vector<double> out(n);
  out[0] = geodesic_distance(metric, traj.states[0], traj.states[1]).s / dt;
  for (std::size_t k = 1; k + 1 < n; ++k)
    out[k] = geodesic_distance(metric, traj.states[k - 1], traj.states[k + 1]).s / (2.0 * dt);
  out[n - 1] = geodesic_distance(metric, traj.states[n - 2], traj.states[n - 1]).s / dt;
  return out;
}

std::optional<double> time_to_target(const MetricOperator& metric, const Matrix& h,
                                     const Vector& psi_i, const Ray& target, double hbar,
                                     double t_max, double tol, int grid) {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be strictly positive");
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("tol must lie in (0, 1)");
  if (grid < 2) throw TooFewSteps("time_to_target needs at least a 2-point grid");

  const double threshold = 1.0 - tol;
  const auto fidelity_at = [&](double t) {
    return ray_fidelity(metric, propagate(h, psi_i, t, hbar), target.representative);
  };

  double prev_t = 0.0;
  if (fidelity_at(0.0) >= threshold) return 0.0;
  for (int k = 1; k <= grid; ++k) {
    const double t = t_max * k / grid;
    if (fidelity_at(t) >= threshold) {
      double lo = prev_t, hi = t;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (fidelity_at(mid) >= threshold)
          hi = mid;
        else
          lo = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
  }
  return std::nullopt;
}

double path_length(const Trajectory& traj) {
  return path_length(std::span<const double>(traj.times),
                     std::span<const double>(traj.speed));
}

}  // namespace qbrach
