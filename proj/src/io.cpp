#include "qbrach/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qbrach::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw SchemaError("complex values must be [re, im] number pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json state_to_json(const Vector& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Vector state_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2)
    throw SchemaError("states must be arrays of at least two [re, im] pairs");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2) throw SchemaError("matrices must have dimension >= 2");
  const std::size_t n = j.size();
  Matrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n)
      throw SchemaError("matrices must be square, row-major arrays");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Matrix metric_matrix_from_json(const json& j) {
  if (j.is_array()) return matrix_from_json(j);
  if (j.is_object()) {
    if (!j.contains("a") || !j.contains("c") || !j["a"].is_number() || !j["c"].is_number())
      throw SchemaError("metric objects need numeric fields \"a\" and \"c\"");
    Complex b(0.0, 0.0);
    if (j.contains("b")) b = complex_from_json(j["b"]);
    return metric_matrix_from_params(j["a"].get<double>(), j["c"].get<double>(), b);
  }
  throw SchemaError("metrics must be a matrix or an {a, c, b} object");
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Vector load_state(const std::string& path) { return state_from_json(parse_file(path)); }

Matrix load_matrix(const std::string& path) {
  json j = parse_file(path);
  // Accept a construction report directly so its Hamiltonian can be fed back
  // into evolve/verify without extraction.
  if (j.is_object() && j.contains("hamiltonian")) j = j["hamiltonian"];
  return matrix_from_json(j);
}

Matrix load_metric_matrix(const std::string& path) {
  return metric_matrix_from_json(parse_file(path));
}

namespace {

void write_json_impl(std::ostream& os, const json& j, int indent) {
  const std::string pad(2 * indent, ' ');
  const std::string pad_in(2 * (indent + 1), ' ');
  switch (j.type()) {
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      break;
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        break;
      }
      // Number-only arrays stay on one line; nested structures wrap.
      bool flat = true;
      for (const auto& item : j)
        if (item.is_structured()) flat = false;
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json_impl(os, j[i], indent);
        }
        os << "]";
      } else {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          os << pad_in;
          write_json_impl(os, j[i], indent + 1);
          if (i + 1 < j.size()) os << ",";
          os << "\n";
        }
        os << pad << "]";
      }
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        os << pad_in << json(key).dump() << ": ";
        write_json_impl(os, value, indent + 1);
        if (++i < j.size()) os << ",";
        os << "\n";
      }
      os << pad << "}";
      break;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const json& j) {
  write_json_impl(os, j, 0);
  os << "\n";
}

std::string json_to_string(const json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  if (traj.states.empty()) throw TooFewSamples("empty trajectory");
  const std::size_t dim = traj.states.front().size();
  const bool has_target = !traj.fidelity_to_target.empty();

  os << "t";
  for (std::size_t i = 0; i < dim; ++i) os << ",re_psi" << i << ",im_psi" << i;
  os << ",speed,accumulated_s,eta_norm";
  if (has_target) os << ",fidelity";
  os << "\n";

  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    os << format_double(traj.times[k]);
    for (std::size_t i = 0; i < dim; ++i)
      os << "," << format_double(traj.states[k][i].real()) << ","
         << format_double(traj.states[k][i].imag());
    os << "," << format_double(traj.speed[k]) << ","
       << format_double(traj.accumulated_s[k]) << "," << format_double(traj.eta_norm[k]);
    if (has_target) os << "," << format_double(traj.fidelity_to_target[k]);
    os << "\n";
  }
}

}  // namespace qbrach::io
