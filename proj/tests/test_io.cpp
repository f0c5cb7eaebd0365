#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qbrach/evolution.hpp"
#include "qbrach/io.hpp"
#include "test_support.hpp"

using namespace qbrach;
namespace io = qbrach::io;
namespace ts = testsupport;

namespace {

std::string temp_path(const std::string& name) {
  return "/tmp/qbrach_io_" + std::to_string(::getpid()) + "_" + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("complex and state JSON round trips preserve doubles") {
  auto rng = ts::seeded_rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const Complex z(u(rng) * std::pow(10.0, rep % 17 - 8), u(rng));
    const std::string text = io::json_to_string(io::complex_to_json(z));
    const Complex back = io::complex_from_json(io::json::parse(text));
    CHECK(back == z);  // bitwise: 17 significant digits round-trip exactly

    Vector v = ts::random_state(rng, 3);
    const Vector v_back =
        io::state_from_json(io::json::parse(io::json_to_string(io::state_to_json(v))));
    REQUIRE(v_back.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v_back[i] == v[i]);

    Matrix m = ts::random_matrix(rng, 2);
    const Matrix m_back =
        io::matrix_from_json(io::json::parse(io::json_to_string(io::matrix_to_json(m))));
    CHECK(ts::max_abs_diff(m, m_back) == 0.0);
  }
}

TEST_CASE("schema violations are reported as such") {
  CHECK_THROWS_AS(io::state_from_json(io::json::parse("3")), SchemaError);
  CHECK_THROWS_AS(io::state_from_json(io::json::parse("[[1,0]]")), SchemaError);
  CHECK_THROWS_AS(io::state_from_json(io::json::parse("[[1,0],[1]]")), SchemaError);
  CHECK_THROWS_AS(io::state_from_json(io::json::parse("[[1,0],[\"x\",0]]")), SchemaError);
  CHECK_THROWS_AS(io::matrix_from_json(io::json::parse("[[[1,0]],[[0,1]]]")), SchemaError);
  CHECK_THROWS_AS(io::matrix_from_json(io::json::parse("[[[1,0]]]")), SchemaError);
  CHECK_THROWS_AS(io::metric_matrix_from_json(io::json::parse("{\"a\": 1}")), SchemaError);
  CHECK_THROWS_AS(io::parse_file("/nonexistent/qbrach.json"), SchemaError);

  const std::string bad = temp_path("bad.json");
  write_file(bad, "{not json");
  CHECK_THROWS_AS(io::parse_file(bad), SchemaError);
  std::remove(bad.c_str());
}

TEST_CASE("metric JSON accepts matrix and parameter forms") {
  const Matrix m1 = io::metric_matrix_from_json(
      io::json::parse("{\"a\": 1, \"c\": 0.25, \"b\": [0, 0]}"));
  CHECK(ts::max_abs_diff(m1, Matrix{{1.0, 0.0}, {0.0, 0.25}}) == 0.0);

  const Matrix m2 = io::metric_matrix_from_json(
      io::json::parse("{\"a\": 2, \"c\": 3, \"b\": [0.3, 0.4]}"));
  CHECK(m2(1, 0) == Complex(0.3, 0.4));
  CHECK(m2(0, 1) == Complex(0.3, -0.4));
  CHECK(m2(0, 0) == Complex(2.0, 0.0));

  const Matrix m3 =
      io::metric_matrix_from_json(io::json::parse("[[[1,0],[0,0]],[[0,0],[4,0]]]"));
  CHECK(ts::max_abs_diff(m3, Matrix{{1.0, 0.0}, {0.0, 4.0}}) == 0.0);
}

TEST_CASE("load_matrix unwraps construction reports") {
  const std::string path = temp_path("report.json");
  write_file(path,
             "{\"tau_min\": 1.0, \"hamiltonian\": [[[0,0],[0,-1]],[[0,1],[0,0]]]}");
  const Matrix h = io::load_matrix(path);
  CHECK(h(0, 1) == Complex(0.0, -1.0));
  CHECK(h(1, 0) == Complex(0.0, 1.0));
  std::remove(path.c_str());
}

TEST_CASE("json writer is deterministic and uses 17 significant digits") {
  io::json j;
  j["value"] = 1.0 / 3.0;
  j["list"] = {0.1, 0.2};
  const std::string once = io::json_to_string(j);
  const std::string twice = io::json_to_string(j);
  CHECK(once == twice);
  CHECK(once.find("0.33333333333333331") != std::string::npos);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("trajectory CSV layout") {
  const MetricOperator id = MetricOperator::identity(2);
  const Matrix h{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
  const Vector e1{1.0, 0.0};

  const Trajectory plain = sample_trajectory(id, h, e1, 0.5, 4);
  std::ostringstream os_plain;
  io::write_trajectory_csv(os_plain, plain);
  std::istringstream lines(os_plain.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,re_psi0,im_psi0,re_psi1,im_psi1,speed,accumulated_s,eta_norm");
  int rows = 0;
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 5);

  const Trajectory with_target =
      sample_trajectory(id, h, e1, 0.5, 4, 1.0, canonicalize(Vector{0.0, 1.0}));
  std::ostringstream os_target;
  io::write_trajectory_csv(os_target, with_target);
  std::string header2;
  std::istringstream lines2(os_target.str());
  std::getline(lines2, header2);
  CHECK(header2 ==
        "t,re_psi0,im_psi0,re_psi1,im_psi1,speed,accumulated_s,eta_norm,fidelity");
}
