#pragma once

// Metric operators eta (Hermitian, positive definite) and the inner product,
// adjoint and Hermitization they induce. With eta = I everything reduces to
// the standard machinery.

#include "qbrach/numerics.hpp"

namespace qbrach {

class MetricOperator {
 public:
  // Validates Hermiticity and positive definiteness, then caches the
  // principal square root, its inverse and the full inverse.
  explicit MetricOperator(const Matrix& eta, const Tolerances& tol = default_tolerances());

  // Exact identity metric: no eigendecomposition, no rounding.
  static MetricOperator identity(std::size_t dim);

  std::size_t dim() const { return eta_.dim(); }
  const Matrix& matrix() const { return eta_; }
  const Matrix& sqrt() const { return sqrt_; }
  const Matrix& inv_sqrt() const { return inv_sqrt_; }
  const Matrix& inverse() const { return inverse_; }

 private:
  MetricOperator() = default;
  Matrix eta_, sqrt_, inv_sqrt_, inverse_;
};

// Scalar data of a 2x2 metric [[a, conj(b)], [b, c]] and the derived chart
// coefficients.
struct MetricParams2x2 {
  double a = 1.0;
  double c = 1.0;
  Complex b = Complex(0.0, 0.0);  // lower-left entry
  double d = 1.0;                 // determinant a c - |b|^2
  double k1 = 0.25;               // d / (a + c)^2
  double k2 = 0.0;                // (a - c) / (a + c)
  double k3 = 0.0;                // 2|b| / (a + c)
  double beta = 0.0;              // atan2(Im b, Re b); zero when b = 0
};

// <phi| eta |psi>
Complex pseudo_inner(const MetricOperator& metric, const Vector& phi, const Vector& psi);

// sqrt of <psi| eta |psi>
double eta_norm(const MetricOperator& metric, const Vector& psi);

MetricParams2x2 params_from_2x2(const MetricOperator& metric);

// [[a, conj(b)], [b, c]]
Matrix metric_matrix_from_params(double a, double c, Complex b);

// A# = eta^{-1} A† eta
Matrix pseudo_adjoint(const MetricOperator& metric, const Matrix& a);

// ||H† - eta H eta^{-1}||_F / ||H||_F
double pseudo_hermiticity_defect(const MetricOperator& metric, const Matrix& h);

// True iff ||U† eta U - eta||_F <= tol ||eta||_F. U must be invertible.
bool is_quasi_unitary(const MetricOperator& metric, const Matrix& u, double tol);

// h = eta^{1/2} H eta^{-1/2}; requires H pseudo-Hermitian for this metric.
Matrix equivalent_hermitian(const MetricOperator& metric, const Matrix& h,
                            const Tolerances& tol = default_tolerances());

}  // namespace qbrach
