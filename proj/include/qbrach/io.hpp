#pragma once

// JSON and CSV serialization:
//   complex  [re, im]
//   state    [[re, im], ...]                 (length >= 2)
//   matrix   [[[re, im], ...], ...]          (row-major, square)
//   metric   matrix form or {"a": , "c": , "b": [re, im]}
// All floating-point output is printed with 17 significant digits so files
// round-trip doubles losslessly and runs are byte-reproducible.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qbrach/evolution.hpp"

namespace qbrach::io {

using nlohmann::json;

std::string format_double(double v);  // %.17g

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json state_to_json(const Vector& v);
Vector state_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

Matrix metric_matrix_from_json(const json& j);

json parse_file(const std::string& path);
Vector load_state(const std::string& path);
// Accepts a bare matrix or an object with a "hamiltonian" field (the
// construct report), so reports round-trip into evolve/verify.
Matrix load_matrix(const std::string& path);
Matrix load_metric_matrix(const std::string& path);

// Serializes with format_double applied to every float, keys in sorted
// order, two-space indentation.
void write_json(std::ostream& os, const json& j);
std::string json_to_string(const json& j);

// Header: t,re_psi0,im_psi0,...,speed,accumulated_s,eta_norm[,fidelity]
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace qbrach::io
