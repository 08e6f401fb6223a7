#include "spincorr/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spincorr {

namespace {

constexpr const char* kCorrelationHeader = "t_rad,c_value,std_err";

double parse_double(const std::string& field, std::size_t line_no, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse " +
                                what + " '" + field + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_correlation_csv(const CorrelationFunction& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << kCorrelationHeader << "\n";
  for (std::size_t j = 0; j < c.grid_n(); ++j) {
    out << format_double(c.t(j)) << ',' << format_double(c.values()[j]) << ','
        << format_double(c.std_errs()[j]) << "\n";
  }
}

CorrelationFunction read_correlation_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open correlation file: " + path);
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::vector<double> t, values, std_errs;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kCorrelationHeader) {
        throw std::invalid_argument("line 1: expected header '" +
                                    std::string(kCorrelationHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 3) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 3 comma-separated fields");
    }
    t.push_back(parse_double(fields[0], line_no, "t_rad"));
    values.push_back(parse_double(fields[1], line_no, "c_value"));
    std_errs.push_back(parse_double(fields[2], line_no, "std_err"));
  }
  if (values.empty()) throw std::invalid_argument("correlation file has no data rows");

  CorrelationFunction c = CorrelationFunction::from_samples(std::move(values),
                                                            std::move(std_errs));
  for (std::size_t j = 0; j < c.grid_n(); ++j) {
    if (std::abs(t[j] - c.t(j)) > 1e-9) {
      throw std::invalid_argument("correlation file is not on the uniform grid "
                                  "t_j = 2 pi j / N");
    }
  }
  return c;
}

nlohmann::json spectrum_to_json(const FourierSpectrum& s) {
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"k_max", s.k_max()},
                        {"coefficients", s.coefficients},
                        {"grid_n", s.grid_n}};
}

FourierSpectrum spectrum_from_json(const nlohmann::json& j) {
  FourierSpectrum s;
  s.coefficients = j.at("coefficients").get<std::vector<double>>();
  s.grid_n = j.value("grid_n", std::size_t{0});
  if (j.contains("k_max") && j.at("k_max").get<std::size_t>() != s.k_max()) {
    throw std::invalid_argument("spectrum JSON: k_max does not match coefficients");
  }
  return s;
}

nlohmann::json bound_check_to_json(const BoundCheckReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CoefficientCheck& c : r.checks) {
    checks.push_back({{"k", c.k}, {"value", c.value}, {"slack", c.slack}, {"pass", c.pass}});
  }
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"coefficient_cap", kCoefficientCap},
                        {"stat_tol", r.stat_tol},
                        {"checks", checks},
                        {"pass", r.pass}};
}

nlohmann::json distance_report_to_json(const DistanceReport& r) {
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"norm_sq", r.norm_sq},
                        {"c1", r.c1},
                        {"distance", r.distance},
                        {"bound", r.bound},
                        {"margin", r.margin},
                        {"decomposition_residual", r.decomposition_residual},
                        {"c1_within_cap", r.c1_within_cap},
                        {"parallel_bound_holds", r.parallel_bound_holds}};
}

nlohmann::json optimization_to_json(const OptimizationResult& r) {
  nlohmann::json j = spectrum_to_json(r.spectrum);
  j["objective"] = r.objective;
  j["distance"] = r.distance;
  j["active_set"] = r.active_set;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["kkt_residual"] = r.kkt_residual;
  j["note"] = OptimizationResult::relaxation_note;
  return j;
}

nlohmann::json infeasibility_to_json(const InfeasibleConstraints& e) {
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"feasible", false},
                        {"normalization_target", 1.0},
                        {"min_reachable", e.min_reachable()},
                        {"max_reachable", e.max_reachable()},
                        {"message", e.what()}};
}

nlohmann::json inequality_to_json(const InequalityCheck& r, double theta1, double theta2) {
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"theta1", theta1},
                        {"theta2", theta2},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"tolerance", r.tolerance},
                        {"satisfied", r.satisfied}};
}

nlohmann::json chsh_to_json(double s, double a, double a2, double b, double b2) {
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"angles", {a, a2, b, b2}},
                        {"s_value", s},
                        {"abs_value", std::abs(s)},
                        {"classical_bound", 2.0},
                        {"singlet_value", 2.0 * std::numbers::sqrt2}};
}

nlohmann::json verdict_to_json(const TestVerdict& v) {
  nlohmann::json estimates = nlohmann::json::array();
  for (const AngleEstimate& a : v.estimates) {
    estimates.push_back({{"theta_rad", a.theta_rad},
                         {"anticorrelation", a.anticorrelation},
                         {"std_err", a.std_err}});
  }
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"estimates", estimates},
                        {"distance_estimate", v.distance_estimate},
                        {"ci_lower", v.ci_lower},
                        {"ci_upper", v.ci_upper},
                        {"alpha", v.alpha},
                        {"bootstrap_samples", v.bootstrap_samples},
                        {"threshold", v.threshold},
                        {"verdict", v.ruled_out ? "ruled-out" : "inconclusive"},
                        {"coverage_policy", v.coverage_policy},
                        {"seed", v.seed}};
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open JSON file: " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace spincorr
