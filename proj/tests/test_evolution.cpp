#include <doctest.h>

#include <cmath>

#include "qbrach/evolution.hpp"
#include "qbrach/verify.hpp"
#include "test_support.hpp"

using namespace qbrach;
namespace ts = testsupport;

namespace {

const Complex kI(0.0, 1.0);
const double kPi = 3.141592653589793;

const Matrix kSigmaY{{0.0, -kI}, {kI, 0.0}};

Vector e1() { return Vector{1.0, 0.0}; }
Vector e2() { return Vector{0.0, 1.0}; }

Matrix evolution_operator_at(const Matrix& h, double t, double hbar) {
  const std::size_t n = h.dim();
  Matrix u(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector basis(n);
    basis[j] = 1.0;
    const Vector col = propagate(h, basis, t, hbar);
    for (std::size_t i = 0; i < n; ++i) u(i, j) = col[i];
  }
  return u;
}

}  // namespace

TEST_CASE("propagate examples") {
  const Vector psi0{Complex(0.3, 0.1), Complex(-0.2, 0.9)};
  CHECK(ts::max_abs_diff(propagate(kSigmaY, psi0, 0.0), psi0) == 0.0);

  const Vector quarter = propagate(kSigmaY, e1(), kPi / 4.0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(quarter[0] - r) <= 1e-14);
  CHECK(std::abs(quarter[1] - r) <= 1e-14);

  // deformed generator: exp(theta [[0,-1/2],[2,0]]) e1 = (cos, 2 sin)
  const Matrix hstar{{0.0, -0.5 * kI}, {2.0 * kI, 0.0}};
  const double theta = std::atan(0.5);
  const Vector arrived = propagate(hstar, e1(), theta);
  CHECK(std::abs(arrived[0] - std::cos(theta)) <= 1e-14);
  CHECK(std::abs(arrived[1] - 2.0 * std::sin(theta)) <= 1e-14);
  const MetricOperator id = MetricOperator::identity(2);
  CHECK(ray_fidelity(id, arrived, Vector{1.0, 1.0}) >= 1.0 - 1e-14);
}

TEST_CASE("2x2 closed-form propagator matches the matrix exponential") {
  auto rng = ts::seeded_rng(61);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    const Matrix h = ts::random_matrix(rng, 2);  // arbitrary complex generator
    const Vector psi = ts::random_state(rng, 2);
    const double t = time(rng);
    Matrix gen = h;
    gen *= Complex(0.0, -t);
    const Vector via_series = matrix_exponential(gen) * psi;
    const Vector via_closed = propagate(h, psi, t);
    CHECK(norm(via_closed - via_series) <= 1e-11 * std::max(1.0, norm(via_series)));
  }
}

TEST_CASE("trajectory sampling: eigenstate stands still") {
  const MetricOperator id = MetricOperator::identity(2);
  const Matrix h{{1.0, 0.0}, {0.0, -1.0}};
  const Trajectory traj = sample_trajectory(id, h, e1(), 1.0, 50);
  REQUIRE(traj.times.size() == 51);
  REQUIRE(traj.states.size() == 51);
  REQUIRE(traj.speed.size() == 51);
  REQUIRE(traj.accumulated_s.size() == 51);
  REQUIRE(traj.eta_norm.size() == 51);
  CHECK(traj.fidelity_to_target.empty());
  for (const double v : traj.speed) CHECK(std::abs(v) <= 1e-12);
  CHECK(std::abs(traj.accumulated_s.back()) <= 1e-12);
}

TEST_CASE("trajectory sampling: optimal flow arrives with the geodesic length") {
  const MetricOperator id = MetricOperator::identity(2);
  const double r = 1.0 / std::sqrt(2.0);
  const Vector plus{r, r};
  const BrachistochroneResult res = construct_spectral(id, e1(), plus);
  const Trajectory traj = sample_trajectory(id, res.hamiltonian, e1(), res.tau_min, 10000,
                                            1.0, canonicalize(plus));
  CHECK(std::abs(traj.accumulated_s.back() - res.s) <= 1e-8);
  CHECK(traj.fidelity_to_target.back() >= 1.0 - 1e-10);
  CHECK(std::abs(path_length(traj) - res.s) <= 1e-8);
  for (std::size_t k = 1; k < traj.accumulated_s.size(); ++k)
    CHECK(traj.accumulated_s[k] >= traj.accumulated_s[k - 1]);
}

TEST_CASE("trajectory sampling input validation") {
  const MetricOperator id = MetricOperator::identity(2);
  CHECK_THROWS_AS(sample_trajectory(id, kSigmaY, e1(), 1.0, 1), TooFewSteps);
  CHECK_THROWS_AS(sample_trajectory(id, kSigmaY, e1(), 0.0, 100), TooFewSteps);
  CHECK_THROWS_AS(sample_trajectory(id, kSigmaY, e1(), -1.0, 100), TooFewSteps);
}

TEST_CASE("quasi-unitary flow preserves the metric norm, not the standard one") {
  const MetricOperator eta(Matrix{{1.0, 0.0}, {0.0, 0.25}});
  const BrachistochroneResult res = construct_spectral(eta, e1(), Vector{1.0, 1.0});
  const Trajectory traj = sample_trajectory(eta, res.hamiltonian, e1(), res.tau_min, 400);

  double eta_drift = 0.0;
  double standard_drift = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    eta_drift = std::max(eta_drift, std::abs(traj.eta_norm[k] / traj.eta_norm[0] - 1.0));
    standard_drift =
        std::max(standard_drift, std::abs(norm(traj.states[k]) / norm(traj.states[0]) - 1.0));
  }
  CHECK(eta_drift <= 1e-10);
  CHECK(standard_drift > 0.1);  // the standard norm visibly varies

  // the sampled evolution operators are quasi-unitary throughout
  for (const double t : {0.1, 0.2, 0.3, res.tau_min}) {
    const Matrix u = evolution_operator_at(res.hamiltonian, t, 1.0);
    CHECK(is_quasi_unitary(eta, u, 1e-9));
  }
}

TEST_CASE("standard flow under Hermitian generators is unitary") {
  auto rng = ts::seeded_rng(62);
  const MetricOperator id = MetricOperator::identity(2);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix h = ts::random_hermitian(rng, 2);
    const Trajectory traj = sample_trajectory(id, h, ts::random_state(rng, 2), 2.0, 100);
    for (const double n : traj.eta_norm)
      CHECK(std::abs(n / traj.eta_norm.front() - 1.0) <= 1e-10);
  }
}

TEST_CASE("measured speed agrees with the analytic speed") {
  const MetricOperator id = MetricOperator::identity(2);

  const Matrix still{{1.0, 0.0}, {0.0, -1.0}};
  const Trajectory fixed = sample_trajectory(id, still, e1(), 1.0, 100);
  for (const double v : measured_speed(id, fixed)) CHECK(std::abs(v) <= 1e-12);

  const double r = 1.0 / std::sqrt(2.0);
  const BrachistochroneResult res = construct_spectral(id, e1(), Vector{r, r});
  const Trajectory opt = sample_trajectory(id, res.hamiltonian, e1(), res.tau_min, 10000);
  for (const double v : measured_speed(id, opt)) CHECK(std::abs(v - 1.0) <= 1e-6);

  // diag(3,-3) on an equal superposition moves at speed 3
  const Matrix h3{{3.0, 0.0}, {0.0, -3.0}};
  const Trajectory fast = sample_trajectory(id, h3, Vector{r, r}, 0.3, 3000);
  for (const double v : measured_speed(id, fast)) CHECK(std::abs(v - 3.0) <= 1e-6);

  const Trajectory two = sample_trajectory(id, h3, Vector{r, r}, 0.1, 2);
  CHECK_THROWS_AS(measured_speed(id, Trajectory{two.hbar,
                                                {two.times[0], two.times[1]},
                                                {two.states[0], two.states[1]},
                                                {},
                                                {},
                                                {},
                                                {}}),
                  TooFewSamples);
}

TEST_CASE("time to target finds the first arrival") {
  const MetricOperator id = MetricOperator::identity(2);
  const double tol = 1e-10;
  // the fidelity threshold is crossed arcsin(sqrt(tol)) of arc early
  const double offset = std::asin(std::sqrt(tol));

  const double r = 1.0 / std::sqrt(2.0);
  const BrachistochroneResult res = construct_spectral(id, e1(), Vector{r, r});
  const auto t_opt = time_to_target(id, res.hamiltonian, e1(), canonicalize(Vector{r, r}),
                                    1.0, 1.0, tol, 200000);
  REQUIRE(t_opt.has_value());
  CHECK(std::abs(*t_opt + offset - res.tau_min) <= 1e-8);

  // an eigenstate of a diagonal generator never reaches the other pole
  const Matrix hd{{1.0, 0.0}, {0.0, -1.0}};
  CHECK(!time_to_target(id, hd, e1(), canonicalize(e2()), 1.0, 10.0, 1e-6).has_value());

  // quarter-to-half turn: e1 reaches e2 at pi/2 under the rotation generator
  const auto t_pole =
      time_to_target(id, kSigmaY, e1(), canonicalize(e2()), 1.0, 2.0, tol, 200000);
  REQUIRE(t_pole.has_value());
  CHECK(std::abs(*t_pole + offset - kPi / 2.0) <= 1e-8);
}

TEST_CASE("the eta and equivalent-Hermitian pictures trace equal lengths") {
  auto rng = ts::seeded_rng(63);
  for (int rep = 0; rep < 20; ++rep) {
    const MetricOperator eta(ts::random_pd_conditioned(rng, 2));
    const auto [pi, pf] = ts::random_ray_pair(rng, eta);
    const Matrix h = construct_spectral(eta, pi, pf).hamiltonian;
    const Matrix herm = equivalent_hermitian(eta, h);
    const MetricOperator id = MetricOperator::identity(2);

    const double t_final = 0.7;
    const Trajectory in_eta = sample_trajectory(eta, h, pi, t_final, 200);
    const Trajectory in_std = sample_trajectory(id, herm, eta.sqrt() * pi, t_final, 200);
    for (std::size_t k = 0; k < in_eta.accumulated_s.size(); ++k)
      CHECK(std::abs(in_eta.accumulated_s[k] - in_std.accumulated_s[k]) <= 1e-9);
  }
}

TEST_CASE("quasi-unitary arrivals outpace every unitary one as c shrinks") {
  // the eta(c)-optimal generator, watched in the standard geometry, reaches
  // the target ever sooner; unitary evolutions are floored at tau_min
  const MetricOperator id = MetricOperator::identity(2);
  const Vector target{1.0, 1.0};
  const Ray target_ray = canonicalize(target);
  double previous = 1e300;
  for (const double c : {1.0, 1e-1, 1e-2}) {
    const MetricOperator eta(Matrix{{1.0, 0.0}, {0.0, c}});
    const Matrix h = construct_spectral(eta, e1(), target).hamiltonian;
    const auto t = time_to_target(id, h, e1(), target_ray, 1.0, 1.0, 1e-6, 100000);
    REQUIRE(t.has_value());
    CHECK(*t < previous);
    // analytic arrival in the standard picture: arctan(sqrt(c))
    CHECK(std::abs(*t - std::atan(std::sqrt(c))) <= 0.05 * std::atan(std::sqrt(c)));
    previous = *t;
  }
  CHECK(previous < tau_min(id, e1(), target));
}
