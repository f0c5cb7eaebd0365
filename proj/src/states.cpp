#include "qbrach/states.hpp"

#include <cmath>

namespace qbrach {

Projector projector_from_state(const Vector& psi) {
  const double n = norm(psi);
  if (!all_finite(psi)) throw ZeroVector("state has non-finite components");
  if (n <= kZeroVectorNorm) throw ZeroVector();
  Vector unit = (1.0 / n) * psi;
  return Projector{outer(unit, unit)};
}

Ray canonicalize(const Vector& psi) {
  const double n = norm(psi);
  if (!all_finite(psi)) throw ZeroVector("state has non-finite components");
  if (n <= kZeroVectorNorm) throw ZeroVector();

  std::size_t lead = psi.size();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (std::abs(psi[i]) > kZeroVectorNorm * n) {
      lead = i;
      break;
    }
  }
  if (lead == psi.size()) throw ZeroVector("no component above the zero threshold");

  const double lead_abs = std::abs(psi[lead]);
  const Complex phase = std::conj(psi[lead] / lead_abs);
  Vector rep = (phase / n) * psi;
  rep[lead] = Complex(lead_abs / n, 0.0);  // clear phase-division residue
  return Ray{rep};
}

bool rays_equal(const Ray& r1, const Ray& r2, double tol) {
  const Vector& u = r1.representative;
  const Vector& v = r2.representative;
  if (u.size() != v.size()) throw DimensionMismatch();
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu <= kZeroVectorNorm || nv <= kZeroVectorNorm) throw ZeroVector();
  const double fidelity = std::norm(inner(u, v)) / (nu * nu * nv * nv);
  return fidelity >= 1.0 - tol;
}

}  // namespace qbrach
