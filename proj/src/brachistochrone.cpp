#include "qbrach/brachistochrone.hpp"

#include <algorithm>
#include <cmath>

namespace qbrach {

namespace {

void validate_scale(const EnergyScale& scale) {
  if (!(scale.energy > 0.0)) throw InvalidArgument("energy must be strictly positive");
  if (!(scale.hbar > 0.0)) throw InvalidArgument("hbar must be strictly positive");
}

void validate_params(const MetricParams2x2& p) {
  if (!(p.a > 0.0) || !(p.c > 0.0) || !(p.d > 0.0))
    throw NotPositiveDefinite("chart parameters require a > 0, c > 0 and a c - |b|^2 > 0");
}

struct Overlap {
  double ni, nf, cos_s, s;
  Complex xi;
  bool antipodal;
};

Overlap ray_pair_overlap(const MetricOperator& metric, const Vector& psi_i,
                         const Vector& psi_f) {
  if (psi_i.size() != metric.dim() || psi_f.size() != metric.dim())
    throw DimensionMismatch();
  if (!all_finite(psi_i) || !all_finite(psi_f))
    throw ZeroVector("state has non-finite components");
  Overlap o;
  o.ni = eta_norm(metric, psi_i);
  o.nf = eta_norm(metric, psi_f);
  if (o.ni <= kZeroVectorNorm || o.nf <= kZeroVectorNorm) throw ZeroVector();
  o.xi = pseudo_inner(metric, psi_i, psi_f);
  o.cos_s = std::clamp(std::abs(o.xi) / (o.ni * o.nf), 0.0, 1.0);
  o.s = std::acos(o.cos_s);
  o.antipodal = o.cos_s < kAntipodalCosThreshold;
  if (o.cos_s > kCoincidentCosThreshold) throw CoincidentRays();
  return o;
}

}  // namespace

BrachistochroneResult construct_spectral(const MetricOperator& metric, const Vector& psi_i,
                                         const Vector& psi_f, const EnergyScale& scale) {
  validate_scale(scale);
  const Overlap o = ray_pair_overlap(metric, psi_i, psi_f);

  // Unit representatives with the relative phase fixed so that
  // <u|v>_eta = cos s is real and non-negative. Antipodal pairs carry no
  // relative phase; canonical representatives pin the convention instead.
  Vector u, v;
  if (o.antipodal) {
    const Vector ci = canonicalize(psi_i).representative;
    const Vector cf = canonicalize(psi_f).representative;
    u = (1.0 / eta_norm(metric, ci)) * ci;
    v = (1.0 / eta_norm(metric, cf)) * cf;
  } else {
    const Complex phase = std::conj(o.xi) / std::abs(o.xi);
    u = (1.0 / o.ni) * psi_i;
    v = (phase / o.nf) * psi_f;
  }

  // eta-Gram-Schmidt step inside span{u, v}; ||w||_eta = sin s.
  Vector w = v - pseudo_inner(metric, u, v) * u;
  const double nw = eta_norm(metric, w);
  if (nw <= kZeroVectorNorm) throw CoincidentRays();
  const Vector what = (1.0 / nw) * w;

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  const Vector psi_minus = inv_sqrt2 * (u - i_unit * what);
  const Vector psi_plus = inv_sqrt2 * (u + i_unit * what);

  // H = E (-|psi_minus><psi_minus| + |psi_plus><psi_plus|) with metric bras.
  const Vector bra_minus = metric.matrix() * psi_minus;
  const Vector bra_plus = metric.matrix() * psi_plus;
  Matrix h = outer(psi_plus, bra_plus) - outer(psi_minus, bra_minus);
  h *= Complex(scale.energy, 0.0);

  BrachistochroneResult result;
  result.hamiltonian = h;
  result.s = o.s;
  result.tau_min = scale.hbar * o.s / scale.energy;
  result.xi = o.xi;
  result.omega = o.antipodal ? 0.0 : std::arg(o.xi);
  result.antipodal = o.antipodal;
  result.eigenvector_minus = psi_minus;
  result.eigenvector_plus = psi_plus;
  return result;
}

Matrix construct_closed_form(const MetricOperator& metric, const Vector& psi_i,
                             const Vector& psi_f, const EnergyScale& scale,
                             double prefactor_scale) {
  validate_scale(scale);
  if (!(prefactor_scale > 0.0)) throw InvalidArgument("prefactor_scale must be positive");
  const Overlap o = ray_pair_overlap(metric, psi_i, psi_f);
  if (o.antipodal) throw AntipodalRays();

  const double sin_s = std::sin(o.s);
  const double cot_s = o.cos_s / sin_s;
  const Complex coeff =
      Complex(0.0, prefactor_scale * scale.energy * cot_s / 4.0);

  const Vector bra_i = metric.matrix() * psi_i;
  const Vector bra_f = metric.matrix() * psi_f;
  Matrix h = Complex(1.0, 0.0) / o.xi * outer(psi_f, bra_i) -
             Complex(1.0, 0.0) / std::conj(o.xi) * outer(psi_i, bra_f);
  h *= coeff;
  return h;
}

Explicit2x2Result construct_explicit_2x2(const MetricParams2x2& params, Complex zeta,
                                         const EnergyScale& scale, double prefactor_scale,
                                         std::optional<double> omega_override) {
  validate_scale(scale);
  if (!(prefactor_scale > 0.0)) throw InvalidArgument("prefactor_scale must be positive");
  validate_params(params);

  const Complex bconj = std::conj(params.b);
  const Complex xi = params.a * zeta + bconj;
  const double axi = std::abs(xi);
  const double input_scale = params.a * (1.0 + std::abs(zeta)) + std::abs(params.b);

  Explicit2x2Result result;
  result.xi = xi;
  result.tau = explicit_tau_min(params, zeta, scale);
  if (axi <= 1e-14 * input_scale) {
    if (!omega_override) throw AntipodalChartPoint();
    result.omega = *omega_override;
  } else {
    result.omega = std::arg(xi);
  }

  const Complex eiw = std::exp(Complex(0.0, result.omega));
  const Complex factor = Complex(0.0, 1.0) * prefactor_scale * scale.energy /
                         (4.0 * params.a * std::sqrt(params.d)) / eiw;
  Matrix h(2);
  h(0, 0) = factor * (-params.a * bconj);
  h(0, 1) = factor * (-(params.d * eiw * eiw + bconj * bconj));
  h(1, 0) = factor * (params.a * params.a);
  h(1, 1) = factor * (params.a * bconj);
  result.hamiltonian = h;
  return result;
}

double explicit_tau_min(const MetricParams2x2& params, Complex zeta,
                        const EnergyScale& scale) {
  validate_scale(scale);
  validate_params(params);
  const double axi = std::abs(params.a * zeta + std::conj(params.b));
  const double cos_s = std::clamp(axi / std::sqrt(params.d + axi * axi), 0.0, 1.0);
  return scale.hbar / scale.energy * std::acos(cos_s);
}

double tau_min(const MetricOperator& metric, const Vector& psi_i, const Vector& psi_f,
               const EnergyScale& scale) {
  validate_scale(scale);
  return scale.hbar * geodesic_distance(metric, psi_i, psi_f).s / scale.energy;
}

}  // namespace qbrach
