#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qbrach/verify.hpp"
#include "test_support.hpp"

using namespace qbrach;
namespace ts = testsupport;

namespace {

const Vector& e1() {
  static const Vector v{1.0, 0.0};
  return v;
}

const Vector& plus_state() {
  static const Vector v{Complex(1.0 / std::sqrt(2.0), 0.0),
                        Complex(1.0 / std::sqrt(2.0), 0.0)};
  return v;
}

std::vector<std::string> check_names(const VerifyReport& report) {
  std::vector<std::string> names;
  for (const auto& c : report.checks) names.push_back(c.name);
  return names;
}

bool has_check(const VerifyReport& report, const std::string& name) {
  const auto names = check_names(report);
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

TEST_CASE("full battery passes for a freshly constructed operator") {
  const MetricOperator id = MetricOperator::identity(2);
  const VerifyReport report = run_verification(id, e1(), plus_state());

  CHECK(report.all_passed);
  CHECK(report.first_failure() == nullptr);
  CHECK(!report.antipodal);
  CHECK(report.s == doctest::Approx(std::acos(1.0 / std::sqrt(2.0))).epsilon(1e-14));
  CHECK(report.tau_min == doctest::Approx(std::atan(1.0)).epsilon(1e-14));

  const std::vector<std::string> expected = {
      "pseudo_hermiticity", "trace",          "spectrum",
      "arrival",            "constant_speed", "path_length_vs_s",
      "eta_norm_drift",     "quasi_unitarity", "isometry",
      "tau_formula",        "closed_form_scale_4", "closed_form_quarter",
      "gauge_invariance"};
  CHECK(check_names(report) == expected);
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
    CHECK(c.residual <= c.tolerance);
    CHECK(c.tolerance > 0.0);
  }
}

TEST_CASE("deformed metric battery passes and reports the shortened time") {
  const MetricOperator eta(Matrix{{1.0, 0.0}, {0.0, 0.25}});
  const VerifyReport report = run_verification(eta, e1(), Vector{1.0, 1.0});
  CHECK(report.all_passed);
  CHECK(report.tau_min == doctest::Approx(std::atan(0.5)).epsilon(1e-14));
}

TEST_CASE("antipodal pair skips the closed-form comparisons") {
  const MetricOperator id = MetricOperator::identity(2);
  const VerifyReport report = run_verification(id, e1(), Vector{0.0, 1.0});
  CHECK(report.all_passed);
  CHECK(report.antipodal);
  CHECK(report.checks.size() == 11);
  CHECK(!has_check(report, "closed_form_scale_4"));
  CHECK(!has_check(report, "closed_form_quarter"));
  CHECK(has_check(report, "tau_formula"));
  CHECK(has_check(report, "gauge_invariance"));
}

TEST_CASE("supplied operator skips construction-specific checks") {
  const MetricOperator id = MetricOperator::identity(2);
  VerifyOptions options;
  options.hamiltonian = Matrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
  const VerifyReport report = run_verification(id, e1(), plus_state(), options);
  CHECK(report.all_passed);
  CHECK(report.checks.size() == 9);
  CHECK(!has_check(report, "tau_formula"));
  CHECK(!has_check(report, "gauge_invariance"));
  CHECK(!has_check(report, "closed_form_scale_4"));
}

TEST_CASE("a symmetry-breaking operator fails pseudo_hermiticity first") {
  // Not pseudo-Hermitian for this metric, so the spectrum and the
  // speed/path/norm checks are all skipped.
  const MetricOperator eta(Matrix{{1.0, 0.0}, {0.0, 0.25}});
  VerifyOptions options;
  options.hamiltonian = Matrix{{0.0, 1.0}, {3.0, 0.0}};
  const VerifyReport report = run_verification(eta, e1(), Vector{1.0, 1.0}, options);

  CHECK(!report.all_passed);
  REQUIRE(report.first_failure() != nullptr);
  CHECK(report.first_failure()->name == "pseudo_hermiticity");
  CHECK(report.checks.size() == 5);
  const std::vector<std::string> expected = {"pseudo_hermiticity", "trace", "arrival",
                                             "quasi_unitarity", "isometry"};
  CHECK(check_names(report) == expected);
}

TEST_CASE("a Hermitian but non-optimal operator fails arrival") {
  const MetricOperator id = MetricOperator::identity(2);
  VerifyOptions options;
  options.hamiltonian = Matrix{{1.0, 0.0}, {0.0, -1.0}};  // never leaves the e1 ray
  const VerifyReport report = run_verification(id, e1(), plus_state(), options);

  CHECK(!report.all_passed);
  REQUIRE(report.first_failure() != nullptr);
  CHECK(report.first_failure()->name == "arrival");
  // Fidelity against the target stays at 1/2 for all times.
  CHECK(report.first_failure()->residual == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tolerance scale widens every acceptance window") {
  // Perturbation chosen so the relative symmetry defect is 3e-10: above the
  // default 1e-10 window, below the loosened 1e-9 one. The perturbation is
  // traceless and anti-Hermitian, so every other check stays comfortably
  // inside even its default window.
  const MetricOperator id = MetricOperator::identity(2);
  const double delta = 1.5e-10;
  Matrix perturbed{{Complex(0.0, delta), Complex(0.0, -1.0)},
                   {Complex(0.0, 1.0), Complex(0.0, -delta)}};

  VerifyOptions strict;
  strict.hamiltonian = perturbed;
  const VerifyReport fail_report = run_verification(id, e1(), plus_state(), strict);
  CHECK(!fail_report.all_passed);
  REQUIRE(fail_report.first_failure() != nullptr);
  CHECK(fail_report.first_failure()->name == "pseudo_hermiticity");
  CHECK(fail_report.checks.size() == 5);

  VerifyOptions loose = strict;
  loose.tol_scale = 10.0;
  const VerifyReport pass_report = run_verification(id, e1(), plus_state(), loose);
  CHECK(pass_report.all_passed);
  CHECK(pass_report.checks.size() == 9);
  CHECK(pass_report.checks.front().tolerance ==
        doctest::Approx(1e-9).epsilon(1e-12));
}

TEST_CASE("reports are deterministic across runs") {
  auto rng = ts::seeded_rng(2024);
  const Matrix eta_m = ts::random_pd_conditioned(rng, 2);
  const MetricOperator eta(eta_m);
  const auto [psi_i, psi_f] = ts::random_ray_pair(rng, eta);

  const VerifyReport a = run_verification(eta, psi_i, psi_f);
  const VerifyReport b = run_verification(eta, psi_i, psi_f);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].residual == b.checks[i].residual);
  }
  CHECK(a.all_passed);
}

TEST_CASE("randomized metrics and pairs pass end to end") {
  auto rng = ts::seeded_rng(77);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t dim = 2 + rep % 2;
    const MetricOperator eta(ts::random_pd_conditioned(rng, dim));
    const auto [psi_i, psi_f] = ts::random_ray_pair(rng, eta);
    VerifyOptions options;
    options.scale.energy = std::pow(10.0, (rep % 5 - 2) * 0.4);
    const VerifyReport report = run_verification(eta, psi_i, psi_f, options);
    if (!report.all_passed) {
      CAPTURE(rep);
      CAPTURE(report.first_failure()->name);
      CAPTURE(report.first_failure()->residual);
    }
    CHECK(report.all_passed);
  }
}
