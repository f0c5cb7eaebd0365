#include "qbrach/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qbrach {

namespace {

// U(t) column by column through propagate, so dimension 2 keeps the exact
// closed form.
Matrix evolution_operator(const Matrix& h, double t, double hbar) {
  const std::size_t n = h.dim();
  Matrix u(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector basis(n);
    basis[j] = Complex(1.0, 0.0);
    const Vector col = propagate(h, basis, t, hbar);
    for (std::size_t i = 0; i < n; ++i) u(i, j) = col[i];
  }
  return u;
}

double spectrum_residual(const MetricOperator& metric, const Matrix& h, double energy) {
  const Matrix h_eq = metric.sqrt() * h * metric.inv_sqrt();
  const EigenSystem es = hermitian_eigendecomposition(hermitian_part(h_eq));
  const std::size_t n = es.eigenvalues.size();
  double residual = std::max(std::abs(es.eigenvalues.front() + energy),
                             std::abs(es.eigenvalues.back() - energy));
  for (std::size_t k = 1; k + 1 < n; ++k)
    residual = std::max(residual, std::abs(es.eigenvalues[k]));
  return residual;
}

}  // namespace

VerifyReport run_verification(const MetricOperator& metric, const Vector& psi_i,
                              const Vector& psi_f, const VerifyOptions& options) {
  const double ts = options.tol_scale;
  const double energy = options.scale.energy;
  const double hbar = options.scale.hbar;

  VerifyReport report;
  const auto add = [&](const std::string& name, double residual, double tolerance) {
    const bool passed = residual <= tolerance;
    report.checks.push_back({name, residual, tolerance, passed});
    if (!passed) report.all_passed = false;
    return passed;
  };

  const Distance dist = geodesic_distance(metric, psi_i, psi_f);
  report.s = dist.s;
  report.tau_min = hbar * dist.s / energy;

  Matrix h;
  bool constructed = false;
  BrachistochroneResult built;
  if (options.hamiltonian) {
    h = *options.hamiltonian;
    if (h.dim() != metric.dim()) throw DimensionMismatch();
  } else {
    built = construct_spectral(metric, psi_i, psi_f, options.scale);
    h = built.hamiltonian;
    report.antipodal = built.antipodal;
    constructed = true;
  }

  const double h_scale = std::max(h.frobenius_norm(), 1e-300);

  const bool pseudo_ok =
      add("pseudo_hermiticity", pseudo_hermiticity_defect(metric, h), 1e-10 * ts);

  add("trace", std::abs(h.trace()) / energy, 1e-12 * ts);

  if (pseudo_ok) add("spectrum", spectrum_residual(metric, h, energy), 1e-10 * ts);

  const Vector arrived = propagate(h, psi_i, report.tau_min, hbar);
  add("arrival", 1.0 - ray_fidelity(metric, arrived, psi_f), 1e-10 * ts);

  if (pseudo_ok) {
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const Vector psi = propagate(h, psi_i, report.tau_min * k / 100.0, hbar);
      const double de = energy_uncertainty(metric, h, psi);
      worst = std::max(worst, std::abs(de - energy) / energy);
    }
    add("constant_speed", worst, 1e-10 * ts);

    const Trajectory traj = sample_trajectory(metric, h, psi_i, report.tau_min,
                                              options.steps, hbar);
    add("path_length_vs_s", std::abs(traj.accumulated_s.back() - report.s), 1e-8 * ts);

    double drift = 0.0;
    for (const double nn : traj.eta_norm)
      drift = std::max(drift, std::abs(nn / traj.eta_norm.front() - 1.0));
    add("eta_norm_drift", drift, 1e-9 * ts);
  }

  {
    const Matrix u = evolution_operator(h, report.tau_min, hbar);
    const Matrix drift = u.adjoint() * metric.matrix() * u - metric.matrix();
    add("quasi_unitarity",
        drift.frobenius_norm() / metric.matrix().frobenius_norm(), 1e-9 * ts);
  }

  {
    const MetricOperator flat = MetricOperator::identity(metric.dim());
    const Vector mapped_i = metric.sqrt() * psi_i;
    const Vector mapped_f = metric.sqrt() * psi_f;
    add("isometry", std::abs(geodesic_distance(flat, mapped_i, mapped_f).s - report.s),
        1e-10 * ts);
  }

  if (constructed) {
    add("tau_formula", std::abs(built.tau_min - hbar * report.s / energy),
        1e-12 * ts * std::max(built.tau_min, 1e-300));

    if (!built.antipodal) {
      const Matrix closed4 =
          construct_closed_form(metric, psi_i, psi_f, options.scale, 4.0);
      add("closed_form_scale_4", (closed4 - h).frobenius_norm() / h_scale, 1e-10 * ts);

      const Matrix closed1 =
          construct_closed_form(metric, psi_i, psi_f, options.scale, 1.0);
      const Matrix quarter_diff = closed1 - 0.25 * h;
      add("closed_form_quarter", quarter_diff.max_abs(),
          1e-12 * ts * std::max(1.0, h.max_abs()));
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> log_mag(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    double gauge_residual = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      const Complex ci = std::pow(10.0, log_mag(rng)) * std::exp(Complex(0.0, angle(rng)));
      const Complex cf = std::pow(10.0, log_mag(rng)) * std::exp(Complex(0.0, angle(rng)));
      const BrachistochroneResult rescaled =
          construct_spectral(metric, ci * psi_i, cf * psi_f, options.scale);
      gauge_residual =
          std::max(gauge_residual, (rescaled.hamiltonian - h).max_abs());
    }
    add("gauge_invariance", gauge_residual, 1e-12 * ts * std::max(1.0, h.max_abs()));
  }

  return report;
}

}  // namespace qbrach
