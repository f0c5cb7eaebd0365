#pragma once

// Verification battery for a ray pair and metric: constructs the optimal
// Hamiltonian (or takes a supplied one) and checks spectrum, symmetry,
// arrival, speed, path length, closed-form consistency and gauge freedom,
// each against a pinned tolerance.

#include <cstdint>
#include <optional>
#include <string>

#include "qbrach/evolution.hpp"

namespace qbrach {

struct VerifyOptions {
  EnergyScale scale;
  int steps = 1000;               // trajectory resolution
  std::uint64_t seed = 20240814;  // randomized sub-checks (gauge rescalings)
  double tol_scale = 1.0;         // global multiplier on every tolerance
  // When set, this operator is verified instead of a fresh construction;
  // construction-specific checks are skipped.
  std::optional<Matrix> hamiltonian;
};

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed = true;
  double s = 0.0;
  double tau_min = 0.0;
  bool antipodal = false;

  const VerifyCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

VerifyReport run_verification(const MetricOperator& metric, const Vector& psi_i,
                              const Vector& psi_f, const VerifyOptions& options = {});

}  // namespace qbrach
