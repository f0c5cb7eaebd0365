#pragma once

// The projective-space geometry induced by a metric operator: geodesic
// distance, the line element in intrinsic and chart coordinates, energy
// uncertainty and path length.

#include <span>

#include "qbrach/metric.hpp"
#include "qbrach/states.hpp"

namespace qbrach {

// Geodesic distance between rays; s lies in [0, pi/2].
struct Distance {
  double s = 0.0;
};

struct ChartPointXY {
  double x = 0.0;
  double y = 0.0;
};

// theta in [0, pi], phi in [0, 2 pi).
struct ChartPointSpherical {
  double phi = 0.0;
  double theta = 0.0;
};

// s = arccos(|<psi_i|psi_f>_eta| / (||psi_i||_eta ||psi_f||_eta))
Distance geodesic_distance(const MetricOperator& metric, const Vector& psi_i,
                           const Vector& psi_f);

// |<psi_f|psi>_eta|^2 / (||psi_f||^2 ||psi||^2) = cos^2 s
double ray_fidelity(const MetricOperator& metric, const Vector& psi, const Vector& psi_f);

// ds^2 = (<psi|psi><dpsi|dpsi> - |<psi|dpsi>|^2) / <psi|psi>^2, all brackets
// in the metric inner product.
double line_element_squared(const MetricOperator& metric, const Vector& psi,
                            const Vector& dpsi);

// Affine chart psi = (1, x + i y):
// ds^2 = d (dx^2 + dy^2) / (a + 2(b1 x + b2 y) + c (x^2 + y^2))^2
double chart_line_element_xy(const MetricParams2x2& p, const ChartPointXY& at, double dx,
                             double dy);

// Spherical chart:
// ds^2 = k1 (dtheta^2 + sin^2 theta dphi^2)
//        / (1 + k2 cos theta + k3 cos phi sin theta)^2
double chart_line_element_spherical(const MetricParams2x2& p, const ChartPointSpherical& at,
                                    double dtheta, double dphi);

// x = tan(theta/2) cos(phi + beta), y = tan(theta/2) sin(phi + beta)
ChartPointSpherical xy_to_spherical(const MetricParams2x2& p, const ChartPointXY& at);
ChartPointXY spherical_to_xy(const MetricParams2x2& p, const ChartPointSpherical& at);

// Delta E = sqrt(<H^2> - |<H>|^2) in the metric inner product. H must be
// pseudo-Hermitian for the supplied metric (Hermitian when eta = I).
double energy_uncertainty(const MetricOperator& metric, const Matrix& h, const Vector& psi);

// Composite Simpson over a uniform time grid; the samples are speeds, i.e.
// Delta E / hbar, so the result is the projective path length.
double path_length(std::span<const double> times, std::span<const double> speeds);

}  // namespace qbrach
