#include "qbrach/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbrach {

namespace {

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch();
}

void check_nonempty(std::size_t n) {
  if (n == 0) throw DimensionMismatch("empty operand");
}

double sign_or_one(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

Vector& Vector::operator+=(const Vector& rhs) {
  check_same_size(size(), rhs.size());
  for (std::size_t i = 0; i < size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
  check_same_size(size(), rhs.size());
  for (std::size_t i = 0; i < size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

Vector& Vector::operator*=(Complex z) {
  for (auto& c : c_) c *= z;
  return *this;
}

Complex inner(const Vector& u, const Vector& v) {
  check_same_size(u.size(), v.size());
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double norm(const Vector& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::norm(v[i]);
  return std::sqrt(acc);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()), a_(rows.size() * rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionMismatch("matrix rows must all have length n");
    std::size_t j = 0;
    for (const auto& z : row) a_[i * n_ + j++] = z;
    ++i;
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  check_same_size(n_, rhs.n_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  check_same_size(n_, rhs.n_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex z) {
  for (auto& a : a_) a *= z;
  return *this;
}

Matrix Matrix::adjoint() const {
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex Matrix::trace() const {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < n_; ++i) acc += (*this)(i, i);
  return acc;
}

double Matrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& a : a_) acc += std::norm(a);
  return std::sqrt(acc);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& a : a_) m = std::max(m, std::abs(a));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_size(a.dim(), b.dim());
  const std::size_t n = a.dim();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Vector operator*(const Matrix& m, const Vector& v) {
  check_same_size(m.dim(), v.size());
  const std::size_t n = m.dim();
  Vector r(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

Matrix outer(const Vector& u, const Vector& v) {
  check_same_size(u.size(), v.size());
  const std::size_t n = u.size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

bool all_finite(const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

bool all_finite(const Matrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).frobenius_norm(); }

Matrix hermitian_part(const Matrix& m) {
  Matrix r = m + m.adjoint();
  r *= Complex(0.5, 0.0);
  return r;
}

const Tolerances& default_tolerances() {
  static const Tolerances tol;
  return tol;
}

namespace {

void require_hermitian(const Matrix& m, const Tolerances& tol) {
  if (!all_finite(m)) throw NonHermitianInput("matrix has non-finite entries");
  const double scale = std::max(m.frobenius_norm(), 1e-300);
  if (hermiticity_defect(m) > tol.hermitian_rel * scale) throw NonHermitianInput();
}

// One cyclic Jacobi sweep; returns the rotations applied. `a` stays
// Hermitian with a real diagonal, `v` accumulates the rotations.
std::size_t jacobi_sweep(Matrix& a, Matrix& v, double skip_below) {
  const std::size_t n = a.dim();
  std::size_t rotations = 0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const Complex apq = a(p, q);
      const double r = std::abs(apq);
      if (r <= skip_below) continue;
      const double app = a(p, p).real();
      const double aqq = a(q, q).real();
      // Smaller root of t^2 - 2 theta t - 1 = 0: the rotation that zeroes
      // a(p,q) while moving the diagonal the least.
      const double theta = (aqq - app) / (2.0 * r);
      const double t = -sign_or_one(theta) / (std::abs(theta) + std::hypot(1.0, theta));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      const Complex phase = apq / r;

      for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp + s * std::conj(phase) * akq;
        a(k, q) = c * akq - s * phase * akp;
        a(p, k) = std::conj(a(k, p));
        a(q, k) = std::conj(a(k, q));
      }
      a(p, p) = Complex(c * c * app + s * s * aqq + 2.0 * c * s * r, 0.0);
      a(q, q) = Complex(s * s * app + c * c * aqq - 2.0 * c * s * r, 0.0);
      a(p, q) = Complex(0.0, 0.0);
      a(q, p) = Complex(0.0, 0.0);

      for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + s * std::conj(phase) * vkq;
        v(k, q) = c * vkq - s * phase * vkp;
      }
      ++rotations;
    }
  }
  return rotations;
}

double off_diagonal_norm(const Matrix& a) {
  double acc = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace

EigenSystem hermitian_eigendecomposition(const Matrix& m, const Tolerances& tol) {
  check_nonempty(m.dim());
  require_hermitian(m, tol);
  const std::size_t n = m.dim();

  Matrix a = hermitian_part(m);
  Matrix v = Matrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const double stop = 1e-15 * scale;
  const double skip_below = stop / std::max<double>(n * n, 1);

  for (int sweep = 0; sweep < 60; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    if (jacobi_sweep(a, v, skip_below) == 0) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = Matrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    es.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, j) = v(i, order[j]);
  }
  return es;
}

Matrix principal_sqrt_pd(const Matrix& m, const Tolerances& tol) {
  const EigenSystem es = hermitian_eigendecomposition(m, tol);
  const double lmax = es.eigenvalues.back();
  const double lmin = es.eigenvalues.front();
  if (!(lmax > 0.0) || lmin <= tol.positive_rel * lmax)
    throw NotPositiveDefinite("smallest eigenvalue " + std::to_string(lmin) +
                              " is below the positive-definite floor");
  const std::size_t n = m.dim();
  Matrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(es.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += root * es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k));
  }
  return hermitian_part(r);
}

PositiveDefiniteness is_positive_definite(const Matrix& m, const Tolerances& tol) {
  const EigenSystem es = hermitian_eigendecomposition(m, tol);
  const double max_abs_eig =
      std::max(std::abs(es.eigenvalues.front()), std::abs(es.eigenvalues.back()));
  PositiveDefiniteness result;
  result.min_eigenvalue = es.eigenvalues.front();
  result.threshold = tol.positive_rel * std::max(max_abs_eig, 1.0);
  result.positive = result.min_eigenvalue > result.threshold;
  return result;
}

Matrix solve_linear(const Matrix& a, const Matrix& rhs) {
  check_same_size(a.dim(), rhs.dim());
  check_nonempty(a.dim());
  const std::size_t n = a.dim();
  Matrix lu = a;
  Matrix x = rhs;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  const double tiny = 1e-15 * std::max(a.max_abs(), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::abs(lu(r, col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best <= tiny) throw SingularMatrix();
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(col, j), lu(pivot, j));
        std::swap(x(col, j), x(pivot, j));
      }
    }
    const Complex d = lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu(r, col) / d;
      if (f == Complex(0.0, 0.0)) continue;
      lu(r, col) = Complex(0.0, 0.0);
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
      for (std::size_t j = 0; j < n; ++j) x(r, j) -= f * x(col, j);
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    const Complex d = lu(col, col);
    for (std::size_t j = 0; j < n; ++j) x(col, j) /= d;
    for (std::size_t r = 0; r < col; ++r) {
      const Complex f = lu(r, col);
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) x(r, j) -= f * x(col, j);
    }
  }
  return x;
}

namespace {

double one_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

Matrix exponential_from_eigensystem(const EigenSystem& es, bool rotate) {
  const std::size_t n = es.eigenvectors.dim();
  Matrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex e = rotate ? std::exp(Complex(0.0, es.eigenvalues[k]))
                             : Complex(std::exp(es.eigenvalues[k]), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += e * es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k));
  }
  return r;
}

// Degree-13 Pade approximant with scaling and squaring (Higham 2005).
Matrix pade13_exponential(const Matrix& m) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  static const double theta13 = 5.371920351148152;

  const std::size_t n = m.dim();
  const double nrm = one_norm(m);
  int squarings = 0;
  Matrix a = m;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    a *= Complex(std::ldexp(1.0, -squarings), 0.0);
  }

  const Matrix id = Matrix::identity(n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;

  Matrix u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  u += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  u = a * u;
  Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix f = solve_linear(v - u, v + u);
  for (; squarings > 0; --squarings) f = f * f;
  return f;
}

}  // namespace

Matrix matrix_exponential(const Matrix& m) {
  check_nonempty(m.dim());
  if (!all_finite(m)) throw InvalidArgument("matrix exponential of non-finite matrix");
  const double nrm = m.frobenius_norm();
  if (nrm == 0.0) return Matrix::identity(m.dim());

  // Normal special cases keep exp exactly unitary / positive.
  if (hermiticity_defect(m) <= 1e-15 * nrm)
    return exponential_from_eigensystem(hermitian_eigendecomposition(hermitian_part(m)), false);
  const Matrix skew_test = m + m.adjoint();
  if (skew_test.frobenius_norm() <= 1e-15 * nrm) {
    // m = iS with S Hermitian.
    Matrix s = m;
    s *= Complex(0.0, -1.0);
    return exponential_from_eigensystem(hermitian_eigendecomposition(hermitian_part(s)), true);
  }
  return pade13_exponential(m);
}

}  // namespace qbrach
