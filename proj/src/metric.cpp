#include "qbrach/metric.hpp"

#include <cmath>

namespace qbrach {

MetricOperator::MetricOperator(const Matrix& eta, const Tolerances& tol) {
  if (eta.dim() == 0) throw DimensionMismatch("empty metric");
  const EigenSystem es = hermitian_eigendecomposition(eta, tol);  // checks Hermiticity
  const double lmax = es.eigenvalues.back();
  const double lmin = es.eigenvalues.front();
  if (!(lmax > 0.0) || lmin <= tol.positive_rel * std::max(std::abs(lmax), 1.0))
    throw NotPositiveDefinite("metric eigenvalue " + std::to_string(lmin) +
                              " is below the positive-definite floor");

  const std::size_t n = eta.dim();
  eta_ = hermitian_part(eta);
  sqrt_ = Matrix(n);
  inv_sqrt_ = Matrix(n);
  inverse_ = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(es.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Complex proj = es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k));
        sqrt_(i, j) += root * proj;
        inv_sqrt_(i, j) += proj / root;
        inverse_(i, j) += proj / es.eigenvalues[k];
      }
  }
  sqrt_ = hermitian_part(sqrt_);
  inv_sqrt_ = hermitian_part(inv_sqrt_);
  inverse_ = hermitian_part(inverse_);
}

MetricOperator MetricOperator::identity(std::size_t dim) {
  if (dim == 0) throw DimensionMismatch("empty metric");
  MetricOperator m;
  m.eta_ = Matrix::identity(dim);
  m.sqrt_ = m.eta_;
  m.inv_sqrt_ = m.eta_;
  m.inverse_ = m.eta_;
  return m;
}

Complex pseudo_inner(const MetricOperator& metric, const Vector& phi, const Vector& psi) {
  if (phi.size() != metric.dim() || psi.size() != metric.dim()) throw DimensionMismatch();
  return inner(phi, metric.matrix() * psi);
}

double eta_norm(const MetricOperator& metric, const Vector& psi) {
  const double sq = pseudo_inner(metric, psi, psi).real();
  return std::sqrt(std::max(sq, 0.0));
}

MetricParams2x2 params_from_2x2(const MetricOperator& metric) {
  if (metric.dim() != 2) throw DimensionMismatch("chart parameters need a 2x2 metric");
  MetricParams2x2 p;
  p.a = metric.matrix()(0, 0).real();
  p.c = metric.matrix()(1, 1).real();
  p.b = metric.matrix()(1, 0);
  p.d = p.a * p.c - std::norm(p.b);
  const double sum = p.a + p.c;
  p.k1 = p.d / (sum * sum);
  p.k2 = (p.a - p.c) / sum;
  p.k3 = 2.0 * std::abs(p.b) / sum;
  p.beta = (p.b == Complex(0.0, 0.0)) ? 0.0 : std::atan2(p.b.imag(), p.b.real());
  return p;
}

Matrix metric_matrix_from_params(double a, double c, Complex b) {
  Matrix m(2);
  m(0, 0) = Complex(a, 0.0);
  m(0, 1) = std::conj(b);
  m(1, 0) = b;
  m(1, 1) = Complex(c, 0.0);
  return m;
}

Matrix pseudo_adjoint(const MetricOperator& metric, const Matrix& a) {
  if (a.dim() != metric.dim()) throw DimensionMismatch();
  return metric.inverse() * a.adjoint() * metric.matrix();
}

double pseudo_hermiticity_defect(const MetricOperator& metric, const Matrix& h) {
  if (h.dim() != metric.dim()) throw DimensionMismatch();
  const Matrix lhs = h.adjoint();
  const Matrix rhs = metric.matrix() * h * metric.inverse();
  const double scale = std::max(h.frobenius_norm(), 1e-300);
  return (lhs - rhs).frobenius_norm() / scale;
}

bool is_quasi_unitary(const MetricOperator& metric, const Matrix& u, double tol) {
  if (u.dim() != metric.dim()) throw DimensionMismatch();
  // Invertibility is a precondition; solve_linear raises SingularMatrix.
  (void)solve_linear(u, Matrix::identity(u.dim()));
  const Matrix drift = u.adjoint() * metric.matrix() * u - metric.matrix();
  return drift.frobenius_norm() <= tol * metric.matrix().frobenius_norm();
}

Matrix equivalent_hermitian(const MetricOperator& metric, const Matrix& h,
                            const Tolerances& tol) {
  if (h.dim() != metric.dim()) throw DimensionMismatch();
  const double defect = pseudo_hermiticity_defect(metric, h);
  if (defect > tol.pseudo_hermitian_rel)
    throw NotPseudoHermitian("pseudo-Hermiticity defect " + std::to_string(defect));
  return metric.sqrt() * h * metric.inv_sqrt();
}

}  // namespace qbrach
