#pragma once

// State vectors, rays and rank-1 projectors: the projective view of nonzero
// vectors. Physical content lives in rays; the canonical representative makes
// ray-valued results reproducible.

#include "qbrach/numerics.hpp"

namespace qbrach {

// Norms at or below this count as the zero vector.
inline constexpr double kZeroVectorNorm = 1e-12;

// Canonical representative: unit norm, first non-negligible component real
// and positive.
struct Ray {
  Vector representative;
};

// |psi><psi| / <psi|psi>; Hermitian, idempotent, trace one by construction.
struct Projector {
  Matrix matrix;
};

Projector projector_from_state(const Vector& psi);

Ray canonicalize(const Vector& psi);

// Projector fidelity tr(P1 P2) >= 1 - tol. An equivalence relation at fixed
// tolerance for exact representatives.
bool rays_equal(const Ray& r1, const Ray& r2, double tol);

}  // namespace qbrach
