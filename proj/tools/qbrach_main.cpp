// Command-line front end: distance, construct, evolve, verify and sweep
// subcommands over JSON state/metric/operator files and CSV trajectory
// output.
//
// Exit codes: 0 success, 2 malformed input, 3 metric not admissible,
// 4 degenerate geometry, 5 verification failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "qbrach/io.hpp"
#include "qbrach/verify.hpp"

namespace {

using qbrach::Complex;
using qbrach::EnergyScale;
using qbrach::Matrix;
using qbrach::MetricOperator;
using qbrach::Ray;
using qbrach::Vector;
using qbrach::io::format_double;
using qbrach::io::json;

constexpr int kExitSchema = 2;
constexpr int kExitMetric = 3;
constexpr int kExitGeometry = 4;
constexpr int kExitVerification = 5;

struct RunConfig {
  double energy = 1.0;
  double hbar = 1.0;
  int steps = 1000;
  std::uint64_t seed = 20240814;
  double tol_scale = 1.0;
};

double tolerance_scale_from_env() {
  const char* profile = std::getenv("QBRACH_TOLERANCE_PROFILE");
  if (profile == nullptr || std::string_view(profile).empty()) return 1.0;
  const std::string_view p(profile);
  if (p == "default") return 1.0;
  if (p == "strict") return 0.1;
  if (p == "loose") return 10.0;
  throw qbrach::SchemaError("QBRACH_TOLERANCE_PROFILE must be strict, default or loose");
}

// Config file values fill in every option the command line left unset.
void merge_config(const std::string& path, const CLI::App& cmd, RunConfig& cfg) {
  if (path.empty()) return;
  const json j = qbrach::io::parse_file(path);
  if (!j.is_object()) throw qbrach::SchemaError(path + ": config must be a JSON object");
  const auto unset = [&](const std::string& flag) {
    const CLI::Option* opt = cmd.get_option_no_throw(flag);
    return opt != nullptr && opt->count() == 0;
  };
  try {
    if (j.contains("energy") && unset("--energy")) cfg.energy = j["energy"].get<double>();
    if (j.contains("hbar") && unset("--hbar")) cfg.hbar = j["hbar"].get<double>();
    if (j.contains("steps") && unset("--steps")) cfg.steps = j["steps"].get<int>();
    if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerance_scale") && unset("--tolerance-scale"))
      cfg.tol_scale = j["tolerance_scale"].get<double>();
  } catch (const json::exception& e) {
    throw qbrach::SchemaError(path + ": " + e.what());
  }
}

Complex parse_complex_flag(const std::string& text) {
  try {
    std::size_t pos = 0;
    const double re = std::stod(text, &pos);
    if (pos == text.size()) return Complex(re, 0.0);
    if (text[pos] != ',') throw qbrach::SchemaError("");
    std::size_t pos2 = 0;
    const std::string rest = text.substr(pos + 1);
    const double im = std::stod(rest, &pos2);
    if (pos2 != rest.size()) throw qbrach::SchemaError("");
    return Complex(re, im);
  } catch (const std::exception&) {
    throw qbrach::SchemaError("complex flag values must be re or re,im: got " + text);
  }
}

MetricOperator load_metric_or_identity(const std::string& path, std::size_t dim) {
  if (path.empty()) return MetricOperator::identity(dim);
  return MetricOperator(qbrach::io::load_metric_matrix(path));
}

void write_text(const std::string& output_path, const std::string& text) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw qbrach::SchemaError("cannot open " + output_path + " for writing");
  out << text;
}

json check_to_json(const qbrach::VerifyCheck& c) {
  return json{{"name", c.name},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"passed", c.passed}};
}

json report_to_json(const qbrach::VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(check_to_json(c));
  return json{{"all_passed", report.all_passed},
              {"antipodal", report.antipodal},
              {"s", report.s},
              {"tau_min", report.tau_min},
              {"checks", checks}};
}

int cmd_distance(const std::string& initial, const std::string& final_path,
                 const std::string& metric_path) {
  const Vector psi_i = qbrach::io::load_state(initial);
  const Vector psi_f = qbrach::io::load_state(final_path);
  const MetricOperator metric = load_metric_or_identity(metric_path, psi_i.size());

  const double s = qbrach::geodesic_distance(metric, psi_i, psi_f).s;
  std::string out;
  out += "s = " + format_double(s) + "\n";
  out += "cos_s = " + format_double(std::cos(s)) + "\n";
  if (metric.dim() == 2 && !metric_path.empty()) {
    const qbrach::MetricParams2x2 p = qbrach::params_from_2x2(metric);
    out += "a = " + format_double(p.a) + "\n";
    out += "c = " + format_double(p.c) + "\n";
    out += "b = " + format_double(p.b.real()) + "," + format_double(p.b.imag()) + "\n";
    out += "D = " + format_double(p.d) + "\n";
    out += "k1 = " + format_double(p.k1) + "\n";
    out += "k2 = " + format_double(p.k2) + "\n";
    out += "k3 = " + format_double(p.k3) + "\n";
    out += "beta = " + format_double(p.beta) + "\n";
  }
  std::cout << out;
  return 0;
}

int cmd_construct(const std::string& initial, const std::string& final_path,
                  const std::string& metric_path, const RunConfig& cfg,
                  const std::string& output_path) {
  const Vector psi_i = qbrach::io::load_state(initial);
  const Vector psi_f = qbrach::io::load_state(final_path);
  const MetricOperator metric = load_metric_or_identity(metric_path, psi_i.size());
  const EnergyScale scale{cfg.energy, cfg.hbar};

  const qbrach::BrachistochroneResult result =
      qbrach::construct_spectral(metric, psi_i, psi_f, scale);

  qbrach::VerifyOptions vopts;
  vopts.scale = scale;
  vopts.steps = cfg.steps;
  vopts.seed = cfg.seed;
  vopts.tol_scale = cfg.tol_scale;
  const qbrach::VerifyReport report = qbrach::run_verification(metric, psi_i, psi_f, vopts);

  json out{{"hamiltonian", qbrach::io::matrix_to_json(result.hamiltonian)},
           {"tau_min", result.tau_min},
           {"s", result.s},
           {"xi", qbrach::io::complex_to_json(result.xi)},
           {"omega", result.omega},
           {"antipodal", result.antipodal},
           {"energy", cfg.energy},
           {"hbar", cfg.hbar},
           {"verification", report_to_json(report)}};
  write_text(output_path, qbrach::io::json_to_string(out));

  if (!report.all_passed) {
    if (const auto* failure = report.first_failure())
      std::cerr << "verification failed: " << failure->name << "\n";
    return kExitVerification;
  }
  return 0;
}

int cmd_evolve(const std::string& hamiltonian_path, const std::string& initial,
               const std::string& metric_path, const std::string& target_path,
               double t_final, const RunConfig& cfg, const std::string& output_path) {
  const Matrix h = qbrach::io::load_matrix(hamiltonian_path);
  const Vector psi_i = qbrach::io::load_state(initial);
  const MetricOperator metric = load_metric_or_identity(metric_path, psi_i.size());

  std::optional<Ray> target;
  if (!target_path.empty())
    target = qbrach::canonicalize(qbrach::io::load_state(target_path));

  const qbrach::Trajectory traj = qbrach::sample_trajectory(
      metric, h, psi_i, t_final, cfg.steps, cfg.hbar, target);

  std::ostringstream os;
  qbrach::io::write_trajectory_csv(os, traj);
  write_text(output_path, os.str());
  return 0;
}

int cmd_verify(const std::string& initial, const std::string& final_path,
               const std::string& metric_path, const std::string& hamiltonian_path,
               const RunConfig& cfg, const std::string& output_path) {
  const Vector psi_i = qbrach::io::load_state(initial);
  const Vector psi_f = qbrach::io::load_state(final_path);
  const MetricOperator metric = load_metric_or_identity(metric_path, psi_i.size());

  qbrach::VerifyOptions vopts;
  vopts.scale = EnergyScale{cfg.energy, cfg.hbar};
  vopts.steps = cfg.steps;
  vopts.seed = cfg.seed;
  vopts.tol_scale = cfg.tol_scale;
  if (!hamiltonian_path.empty()) vopts.hamiltonian = qbrach::io::load_matrix(hamiltonian_path);

  const qbrach::VerifyReport report = qbrach::run_verification(metric, psi_i, psi_f, vopts);

  json out = report_to_json(report);
  out["energy"] = cfg.energy;
  out["hbar"] = cfg.hbar;
  out["seed"] = cfg.seed;
  out["tolerance_scale"] = cfg.tol_scale;
  write_text(output_path, qbrach::io::json_to_string(out));

  if (!report.all_passed) {
    if (const auto* failure = report.first_failure())
      std::cerr << "verification failed: " << failure->name << "\n";
    return kExitVerification;
  }
  return 0;
}

int cmd_sweep(Complex zeta, double a, Complex b, const std::string& c_range,
              const std::string& c_list, const RunConfig& cfg,
              const std::string& output_path) {
  std::vector<double> cs;
  if (!c_range.empty()) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    if (std::sscanf(c_range.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
      throw qbrach::SchemaError("--c-range must be lo:hi:n with n >= 1");
    if (!(lo > 0.0) || !(hi > 0.0))
      throw qbrach::InvalidArgument("--c-range endpoints must be positive");
    if (n == 1) {
      cs.push_back(lo);
    } else {
      // log-spaced: tau varies over decades of c
      for (int i = 0; i < n; ++i)
        cs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    }
  }
  if (!c_list.empty()) {
    std::istringstream ss(c_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        std::size_t pos = 0;
        const double c = std::stod(tok, &pos);
        if (pos != tok.size()) throw qbrach::SchemaError("");
        cs.push_back(c);
      } catch (const std::exception&) {
        throw qbrach::SchemaError("--c-list entries must be numbers: got " + tok);
      }
    }
  }
  if (cs.empty()) throw qbrach::SchemaError("sweep needs --c-range or --c-list");
  for (const double c : cs)
    if (!(c > 0.0)) throw qbrach::InvalidArgument("sweep requires c > 0");

  const EnergyScale scale{cfg.energy, cfg.hbar};
  std::ostringstream os;
  os << "c,D,abs_xi,tau_min\n";
  for (const double c : cs) {
    const MetricOperator metric(qbrach::metric_matrix_from_params(a, c, b));
    const qbrach::MetricParams2x2 p = qbrach::params_from_2x2(metric);
    const Complex xi = p.a * zeta + std::conj(p.b);
    const double tau = qbrach::explicit_tau_min(p, zeta, scale);
    os << format_double(c) << "," << format_double(p.d) << ","
       << format_double(std::abs(xi)) << "," << format_double(tau) << "\n";
  }
  write_text(output_path, os.str());
  return 0;
}

int exit_code_for_error(const std::exception& e) {
  if (dynamic_cast<const qbrach::NotPseudoHermitian*>(&e) != nullptr ||
      dynamic_cast<const qbrach::NegativeVariance*>(&e) != nullptr)
    return kExitVerification;
  if (dynamic_cast<const qbrach::NotPositiveDefinite*>(&e) != nullptr ||
      dynamic_cast<const qbrach::NonHermitianInput*>(&e) != nullptr)
    return kExitMetric;
  if (dynamic_cast<const qbrach::ZeroVector*>(&e) != nullptr ||
      dynamic_cast<const qbrach::DimensionMismatch*>(&e) != nullptr ||
      dynamic_cast<const qbrach::CoincidentRays*>(&e) != nullptr ||
      dynamic_cast<const qbrach::AntipodalRays*>(&e) != nullptr ||
      dynamic_cast<const qbrach::AntipodalChartPoint*>(&e) != nullptr ||
      dynamic_cast<const qbrach::PointAtInfinity*>(&e) != nullptr ||
      dynamic_cast<const qbrach::SingularMatrix*>(&e) != nullptr)
    return kExitGeometry;
  if (dynamic_cast<const qbrach::Error*>(&e) != nullptr) return kExitSchema;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal-speed quantum evolution toolkit"};
  app.require_subcommand(1);

  std::string initial, final_path, metric_path, hamiltonian_path, target_path;
  std::string output_path, config_path, c_range, c_list;
  std::string zeta_text = "1", b_text = "0";
  double a_param = 1.0;
  double t_final = 1.0;
  RunConfig cfg;
  bool tol_scale_given = false;

  const auto add_common = [&](CLI::App* cmd, bool with_steps) {
    cmd->add_option("--energy", cfg.energy, "spectral radius E")->check(CLI::PositiveNumber);
    cmd->add_option("--hbar", cfg.hbar, "reduced Planck constant")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--config", config_path, "JSON config merged under explicit flags");
    cmd->add_option("--output", output_path, "write the report here instead of stdout");
    cmd->add_option_function<double>(
           "--tolerance-scale",
           [&](double v) {
             cfg.tol_scale = v;
             tol_scale_given = true;
           },
           "multiplier applied to every verification tolerance")
        ->check(CLI::PositiveNumber);
    if (with_steps)
      cmd->add_option("--steps", cfg.steps, "trajectory grid intervals")
          ->check(CLI::Range(2, 100000000));
  };

  CLI::App* distance = app.add_subcommand("distance", "geodesic distance between two rays");
  distance->add_option("--initial", initial, "initial state JSON")->required();
  distance->add_option("--final", final_path, "final state JSON")->required();
  distance->add_option("--metric", metric_path, "metric JSON (identity when omitted)");

  CLI::App* construct =
      app.add_subcommand("construct", "build the optimal-speed Hamiltonian");
  construct->add_option("--initial", initial, "initial state JSON")->required();
  construct->add_option("--final", final_path, "final state JSON")->required();
  construct->add_option("--metric", metric_path, "metric JSON (identity when omitted)");
  construct->add_option("--seed", cfg.seed, "seed for randomized verification");
  add_common(construct, true);

  CLI::App* evolve = app.add_subcommand("evolve", "sample a trajectory as CSV");
  evolve->add_option("--hamiltonian", hamiltonian_path, "operator JSON")->required();
  evolve->add_option("--initial", initial, "initial state JSON")->required();
  evolve->add_option("--metric", metric_path, "metric JSON (identity when omitted)");
  evolve->add_option("--target", target_path, "target state JSON for the fidelity column");
  evolve->add_option("--t-final", t_final, "evolution time")->required();
  add_common(evolve, true);

  CLI::App* verify = app.add_subcommand("verify", "run the verification battery");
  verify->add_option("--initial", initial, "initial state JSON")->required();
  verify->add_option("--final", final_path, "final state JSON")->required();
  verify->add_option("--metric", metric_path, "metric JSON (identity when omitted)");
  verify->add_option("--hamiltonian", hamiltonian_path,
                     "verify this operator instead of constructing one");
  verify->add_option("--seed", cfg.seed, "seed for randomized sub-checks");
  add_common(verify, true);

  CLI::App* sweep =
      app.add_subcommand("sweep", "tau_min over a family of diagonal-scaled metrics");
  sweep->add_option("--zeta", zeta_text, "final chart point (re or re,im)");
  sweep->add_option("--a", a_param, "metric parameter a")->check(CLI::PositiveNumber);
  sweep->add_option("--b", b_text, "metric parameter b (re or re,im)");
  sweep->add_option("--c-range", c_range, "log-spaced lo:hi:n values for c");
  sweep->add_option("--c-list", c_list, "comma-separated values for c");
  add_common(sweep, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitSchema;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!tol_scale_given) cfg.tol_scale = tolerance_scale_from_env();
    merge_config(config_path, *active, cfg);

    if (active == distance) return cmd_distance(initial, final_path, metric_path);
    if (active == construct)
      return cmd_construct(initial, final_path, metric_path, cfg, output_path);
    if (active == evolve)
      return cmd_evolve(hamiltonian_path, initial, metric_path, target_path, t_final, cfg,
                        output_path);
    if (active == verify)
      return cmd_verify(initial, final_path, metric_path, hamiltonian_path, cfg,
                        output_path);
    if (active == sweep)
      return cmd_sweep(parse_complex_flag(zeta_text), a_param, parse_complex_flag(b_text),
                       c_range, c_list, cfg, output_path);
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for_error(e);
  }
}
