#pragma once

#include <stdexcept>
#include <string>

namespace qbrach {

// Common base for every failure the toolkit raises. The CLI maps concrete
// types onto its exit-code taxonomy, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonHermitianInput : public Error {
 public:
  explicit NonHermitianInput(const std::string& what = "matrix is not Hermitian")
      : Error(what) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what = "matrix is not positive definite")
      : Error(what) {}
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(const std::string& what = "matrix is singular") : Error(what) {}
};

class ZeroVector : public Error {
 public:
  explicit ZeroVector(const std::string& what = "state vector has negligible norm")
      : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what = "operand dimensions do not match")
      : Error(what) {}
};

class NotPseudoHermitian : public Error {
 public:
  explicit NotPseudoHermitian(const std::string& what =
                                  "operator is not pseudo-Hermitian for this metric")
      : Error(what) {}
};

class NegativeVariance : public Error {
 public:
  explicit NegativeVariance(const std::string& what =
                                "energy variance is negative; operator and metric are inconsistent")
      : Error(what) {}
};

class TooFewSamples : public Error {
 public:
  explicit TooFewSamples(const std::string& what = "too few samples") : Error(what) {}
};

class TooFewSteps : public Error {
 public:
  explicit TooFewSteps(const std::string& what = "too few steps") : Error(what) {}
};

class CoincidentRays : public Error {
 public:
  explicit CoincidentRays(const std::string& what = "initial and final rays coincide")
      : Error(what) {}
};

class AntipodalRays : public Error {
 public:
  explicit AntipodalRays(const std::string& what =
                             "rays are antipodal; the closed form is undefined")
      : Error(what) {}
};

class AntipodalChartPoint : public Error {
 public:
  explicit AntipodalChartPoint(const std::string& what =
                                   "xi = 0: antipodal chart point, supply an omega override")
      : Error(what) {}
};

class PointAtInfinity : public Error {
 public:
  explicit PointAtInfinity(const std::string& what =
                               "theta = pi maps to the point at infinity of the affine chart")
      : Error(what) {}
};

// Malformed input files or command-line values.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what = "malformed input") : Error(what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what = "invalid argument") : Error(what) {}
};

}  // namespace qbrach
