#include "qbrach/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qbrach {

namespace {

void check_state(const MetricOperator& metric, const Vector& psi) {
  if (psi.size() != metric.dim()) throw DimensionMismatch();
  if (!all_finite(psi)) throw ZeroVector("state has non-finite components");
}

double checked_eta_norm(const MetricOperator& metric, const Vector& psi) {
  const double n = eta_norm(metric, psi);
  if (n <= kZeroVectorNorm) throw ZeroVector();
  return n;
}

}  // namespace

Distance geodesic_distance(const MetricOperator& metric, const Vector& psi_i,
                           const Vector& psi_f) {
  check_state(metric, psi_i);
  check_state(metric, psi_f);
  const double ni = checked_eta_norm(metric, psi_i);
  const double nf = checked_eta_norm(metric, psi_f);
  const Complex overlap = pseudo_inner(metric, psi_i, psi_f);
  const double cos_s = std::clamp(std::abs(overlap) / (ni * nf), 0.0, 1.0);
  return Distance{std::acos(cos_s)};
}

double ray_fidelity(const MetricOperator& metric, const Vector& psi, const Vector& psi_f) {
  check_state(metric, psi);
  check_state(metric, psi_f);
  const double n1 = checked_eta_norm(metric, psi);
  const double n2 = checked_eta_norm(metric, psi_f);
  const Complex overlap = pseudo_inner(metric, psi_f, psi);
  return std::clamp(std::norm(overlap) / (n1 * n1 * n2 * n2), 0.0, 1.0);
}

double line_element_squared(const MetricOperator& metric, const Vector& psi,
                            const Vector& dpsi) {
  check_state(metric, psi);
  if (dpsi.size() != metric.dim()) throw DimensionMismatch();
  const double nn = pseudo_inner(metric, psi, psi).real();
  if (nn <= kZeroVectorNorm * kZeroVectorNorm) throw ZeroVector();
  const double dd = pseudo_inner(metric, dpsi, dpsi).real();
  const Complex cross = pseudo_inner(metric, psi, dpsi);
  return std::max(0.0, (nn * dd - std::norm(cross)) / (nn * nn));
}

double chart_line_element_xy(const MetricParams2x2& p, const ChartPointXY& at, double dx,
                             double dy) {
  const double b1 = p.b.real();
  const double b2 = p.b.imag();
  const double denom =
      p.a + 2.0 * (b1 * at.x + b2 * at.y) + p.c * (at.x * at.x + at.y * at.y);
  return p.d * (dx * dx + dy * dy) / (denom * denom);
}

double chart_line_element_spherical(const MetricParams2x2& p, const ChartPointSpherical& at,
                                    double dtheta, double dphi) {
  const double st = std::sin(at.theta);
  const double denom = 1.0 + p.k2 * std::cos(at.theta) + p.k3 * std::cos(at.phi) * st;
  return p.k1 * (dtheta * dtheta + st * st * dphi * dphi) / (denom * denom);
}

ChartPointSpherical xy_to_spherical(const MetricParams2x2& p, const ChartPointXY& at) {
  const double r = std::hypot(at.x, at.y);
  ChartPointSpherical out;
  out.theta = 2.0 * std::atan(r);
  if (r == 0.0) {
    out.phi = 0.0;
    return out;
  }
  double phi = std::atan2(at.y, at.x) - p.beta;
  const double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  out.phi = phi;
  return out;
}

ChartPointXY spherical_to_xy(const MetricParams2x2& p, const ChartPointSpherical& at) {
  if (at.theta >= std::numbers::pi - 1e-12) throw PointAtInfinity();
  const double t = std::tan(0.5 * at.theta);
  return ChartPointXY{t * std::cos(at.phi + p.beta), t * std::sin(at.phi + p.beta)};
}

double energy_uncertainty(const MetricOperator& metric, const Matrix& h, const Vector& psi) {
  check_state(metric, psi);
  if (h.dim() != metric.dim()) throw DimensionMismatch();
  const double nn = pseudo_inner(metric, psi, psi).real();
  if (nn <= kZeroVectorNorm * kZeroVectorNorm) throw ZeroVector();

  const Vector hpsi = h * psi;
  const Complex mean = pseudo_inner(metric, psi, hpsi) / nn;
  const double mean2 = pseudo_inner(metric, psi, h * hpsi).real() / nn;
  const double radicand = mean2 - std::norm(mean);
  const double floor = -1e-12 * std::max(1.0, std::abs(mean2));
  if (radicand < floor)
    throw NegativeVariance("variance " + std::to_string(radicand) +
                           "; operator is not pseudo-Hermitian for this metric");
  return std::sqrt(std::max(radicand, 0.0));
}

double path_length(std::span<const double> times, std::span<const double> speeds) {
  if (times.size() != speeds.size()) throw DimensionMismatch();
  if (times.size() < 2) throw TooFewSamples("path length needs at least two samples");
  const std::size_t n = times.size() - 1;  // interval count
  const double dt = (times.back() - times.front()) / static_cast<double>(n);
  if (!(dt > 0.0)) throw Error("time grid must be strictly increasing");
  for (std::size_t i = 0; i < n; ++i) {
    const double step = times[i + 1] - times[i];
    if (std::abs(step - dt) > 1e-6 * dt)
      throw Error("path length requires a uniform time grid");
  }

  if (n == 1) return 0.5 * dt * (speeds[0] + speeds[1]);
  double acc = 0.0;
  const std::size_t paired = (n % 2 == 0) ? n : n - 3;
  for (std::size_t i = 0; i + 2 <= paired; i += 2)
    acc += dt / 3.0 * (speeds[i] + 4.0 * speeds[i + 1] + speeds[i + 2]);
  if (n % 2 != 0) {
    // Simpson 3/8 closes an odd interval count at fourth order.
    const std::size_t i = n - 3;
    acc += 3.0 * dt / 8.0 *
           (speeds[i] + 3.0 * speeds[i + 1] + 3.0 * speeds[i + 2] + speeds[i + 3]);
  }
  return acc;
}

}  // namespace qbrach
