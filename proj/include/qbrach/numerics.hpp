#pragma once

// Dense complex linear algebra at small dimension: adjoints, traces,
// Hermitian eigendecompositions, positive-definite square roots and matrix
// exponentials. Everything is value-semantic and deterministic; no routine
// keeps hidden state, so all of them are safe to call concurrently.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qbrach/errors.hpp"

namespace qbrach {

using Complex = std::complex<double>;

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : c_(n) {}
  Vector(std::initializer_list<Complex> init) : c_(init) {}

  std::size_t size() const { return c_.size(); }
  Complex& operator[](std::size_t i) { return c_[i]; }
  const Complex& operator[](std::size_t i) const { return c_[i]; }

  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs);
  Vector& operator*=(Complex z);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(Complex z, Vector v) { return v *= z; }
  friend Vector operator*(double x, Vector v) { return v *= Complex(x, 0.0); }

 private:
  std::vector<Complex> c_;
};

// <u|v>, conjugate-linear in the first argument.
Complex inner(const Vector& u, const Vector& v);
double norm(const Vector& v);

// Square complex matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex z);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Complex z, Matrix m) { return m *= z; }
  friend Matrix operator*(double x, Matrix m) { return m *= Complex(x, 0.0); }

  Matrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;  // largest entry modulus

 private:
  std::size_t n_ = 0;
  std::vector<Complex> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, const Vector& v);

// |u><v| = u v†
Matrix outer(const Vector& u, const Vector& v);

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

double hermiticity_defect(const Matrix& m);  // ||m - m†||_F
Matrix hermitian_part(const Matrix& m);

// Validation thresholds shared across the toolkit, collected in one record
// so callers can tighten or loosen them coherently.
struct Tolerances {
  double hermitian_rel = 1e-12;        // Hermiticity acceptance, relative
  double positive_rel = 1e-12;         // eigenvalue floor, relative to the largest
  double pseudo_hermitian_rel = 1e-9;  // looser: admits round-tripped operators
};

const Tolerances& default_tolerances();

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // orthonormal columns, matching order
};

struct PositiveDefiniteness {
  bool positive = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  explicit operator bool() const { return positive; }
};

// Cyclic complex Jacobi with a fixed row-major pivot order; at dimension 2 it
// terminates after the single closed-form rotation. Eigenvalues come back
// sorted ascending with the eigenvector columns permuted alongside.
EigenSystem hermitian_eigendecomposition(const Matrix& m,
                                         const Tolerances& tol = default_tolerances());

// Principal square root of a Hermitian positive-definite matrix.
Matrix principal_sqrt_pd(const Matrix& m, const Tolerances& tol = default_tolerances());

// exp(m). Hermitian and skew-Hermitian inputs go through the
// eigendecomposition; everything else uses degree-13 Pade approximation with
// scaling and squaring.
Matrix matrix_exponential(const Matrix& m);

PositiveDefiniteness is_positive_definite(const Matrix& m,
                                          const Tolerances& tol = default_tolerances());

// Solves a X = rhs by LU with partial pivoting.
Matrix solve_linear(const Matrix& a, const Matrix& rhs);

}  // namespace qbrach
