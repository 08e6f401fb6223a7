#include "spincorr/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spincorr/serialization.hpp"

namespace spincorr {

namespace {

constexpr const char* kDatasetHeader = "theta_rad,n_pp,n_pm,n_mp,n_mm";

std::array<double, 4> outcome_probabilities(double anticorr) {
  // p(eps, eta) = (1 - eps*eta*C)/4 in the fixed outcome order.
  const double c = std::clamp(anticorr, -1.0, 1.0);
  const double anti = (1.0 - c) / 4.0;  // eps*eta = +1
  const double corr = (1.0 + c) / 4.0;  // eps*eta = -1
  return {anti, corr, corr, anti};
}

std::array<std::uint64_t, 4> multinomial4(std::uint64_t n,
                                          const std::array<double, 4>& p,
                                          StreamGenerator& gen) {
  std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
  double remaining = 1.0;
  std::uint64_t left = n;
  for (int i = 0; i < 3 && left > 0; ++i) {
    if (remaining <= 0.0) break;
    const double q = std::clamp(p[static_cast<std::size_t>(i)] / remaining, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> bin(left, q);
    counts[static_cast<std::size_t>(i)] = bin(gen);
    left -= counts[static_cast<std::size_t>(i)];
    remaining -= p[static_cast<std::size_t>(i)];
  }
  counts[3] = left;
  return counts;
}

double quantile_type7(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::uint64_t parse_count(const std::string& field, std::size_t line_no) {
  if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                ": count '" + field + "' is not a non-negative integer");
  }
  return std::stoull(field);
}

}  // namespace

void ExperimentalDataset::validate() const {
  if (rows.empty()) throw std::invalid_argument("dataset is empty");
  double prev = -1.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const DatasetRow& r = rows[i];
    const std::string where = "dataset row " + std::to_string(i + 1);
    if (!std::isfinite(r.theta_rad)) {
      throw std::invalid_argument(where + ": theta is not finite");
    }
    if (r.theta_rad < 0.0 || r.theta_rad > std::numbers::pi) {
      throw std::invalid_argument(where + ": theta outside [0, pi]");
    }
    if (r.theta_rad <= prev) {
      throw std::invalid_argument(where + ": theta values must be strictly increasing");
    }
    prev = r.theta_rad;
    if (r.total() < 1) {
      throw std::invalid_argument(where + ": row total must be >= 1");
    }
  }
}

ExperimentalDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);

  ExperimentalDataset d;
  d.source = path;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != kDatasetHeader) {
        throw std::invalid_argument("dataset line 1: expected header '" +
                                    std::string(kDatasetHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) {
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": expected 5 comma-separated fields, got " +
                                  std::to_string(fields.size()));
    }
    DatasetRow row;
    try {
      std::size_t used = 0;
      row.theta_rad = std::stod(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("dataset line " + std::to_string(line_no) +
                                  ": cannot parse angle '" + fields[0] + "'");
    }
    row.n_pp = parse_count(fields[1], line_no);
    row.n_pm = parse_count(fields[2], line_no);
    row.n_mp = parse_count(fields[3], line_no);
    row.n_mm = parse_count(fields[4], line_no);
    d.rows.push_back(row);
  }
  if (!saw_header) throw std::invalid_argument("dataset is empty");
  d.validate();
  return d;
}

void save_dataset(const ExperimentalDataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << kDatasetHeader << "\n";
  for (const DatasetRow& r : d.rows) {
    out << format_double(r.theta_rad) << ',' << r.n_pp << ',' << r.n_pm << ','
        << r.n_mp << ',' << r.n_mm << "\n";
  }
}

std::vector<AngleEstimate> estimate_anticorrelation(const ExperimentalDataset& d) {
  d.validate();
  std::vector<AngleEstimate> estimates;
  estimates.reserve(d.rows.size());
  for (const DatasetRow& r : d.rows) {
    const double n = static_cast<double>(r.total());
    const double e = (static_cast<double>(r.n_pp) + static_cast<double>(r.n_mm) -
                      static_cast<double>(r.n_pm) - static_cast<double>(r.n_mp)) / n;
    AngleEstimate a;
    a.theta_rad = r.theta_rad;
    a.pair_expectation = e;
    a.anticorrelation = -e;
    a.std_err = std::sqrt(std::max(0.0, 1.0 - e * e) / n);
    estimates.push_back(a);
  }
  return estimates;
}

TestVerdict hypothesis_test(const ExperimentalDataset& d, std::size_t bootstrap_B,
                            double alpha, RandomStream stream) {
  d.validate();
  if (bootstrap_B < 1) throw std::invalid_argument("hypothesis_test: bootstrap_B >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("hypothesis_test: alpha must be in (0, 1)");
  }
  const double pi = std::numbers::pi;
  if (d.rows.size() < 8 || d.rows.front().theta_rad > pi / 8.0 ||
      d.rows.back().theta_rad < 7.0 * pi / 8.0) {
    throw std::invalid_argument(std::string("hypothesis_test: insufficient angular "
                                            "coverage (policy: ") + kCoveragePolicy + ")");
  }

  TestVerdict v;
  v.estimates = estimate_anticorrelation(d);
  v.alpha = alpha;
  v.bootstrap_samples = bootstrap_B;
  v.threshold = kDistanceLowerBound;
  v.coverage_policy = kCoveragePolicy;
  v.seed = stream.seed();

  std::vector<double> angles, values;
  angles.reserve(v.estimates.size());
  values.reserve(v.estimates.size());
  for (const AngleEstimate& a : v.estimates) {
    angles.push_back(a.theta_rad);
    values.push_back(a.anticorrelation);
  }
  auto cosine = [](double t) { return std::cos(t); };
  v.distance_estimate = half_period_distance(angles, values, cosine);

  // Per-row multinomial resampling from the observed proportions.
  std::vector<std::array<double, 4>> props(d.rows.size());
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    const double n = static_cast<double>(d.rows[r].total());
    props[r] = {static_cast<double>(d.rows[r].n_pp) / n,
                static_cast<double>(d.rows[r].n_pm) / n,
                static_cast<double>(d.rows[r].n_mp) / n,
                static_cast<double>(d.rows[r].n_mm) / n};
  }
  std::vector<double> boot(bootstrap_B);
  std::vector<double> resampled(d.rows.size());
  for (std::size_t b = 0; b < bootstrap_B; ++b) {
    StreamGenerator gen(stream.substream(b));
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
      const std::uint64_t n = d.rows[r].total();
      const auto counts = multinomial4(n, props[r], gen);
      const double e = (static_cast<double>(counts[0]) + static_cast<double>(counts[3]) -
                        static_cast<double>(counts[1]) - static_cast<double>(counts[2])) /
                       static_cast<double>(n);
      resampled[r] = -e;
    }
    boot[b] = half_period_distance(angles, resampled, cosine);
  }
  std::sort(boot.begin(), boot.end());
  v.ci_lower = quantile_type7(boot, alpha / 2.0);
  v.ci_upper = quantile_type7(boot, 1.0 - alpha / 2.0);
  v.ruled_out = v.ci_upper < v.threshold;
  return v;
}

ExperimentalDataset synthesize_dataset(const std::function<double(double)>& anticorrelation,
                                       const std::vector<double>& angles,
                                       std::uint64_t counts_per_angle,
                                       RandomStream stream) {
  if (angles.empty()) throw std::invalid_argument("synthesize_dataset: no angles");
  if (counts_per_angle < 1) throw std::invalid_argument("synthesize_dataset: need counts >= 1");
  ExperimentalDataset d;
  d.source = "synthetic";
  d.rows.reserve(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j) {
    StreamGenerator gen(stream.substream(j));
    const auto p = outcome_probabilities(anticorrelation(angles[j]));
    const auto counts = multinomial4(counts_per_angle, p, gen);
    DatasetRow row;
    row.theta_rad = angles[j];
    row.n_pp = counts[0];
    row.n_pm = counts[1];
    row.n_mp = counts[2];
    row.n_mm = counts[3];
    d.rows.push_back(row);
  }
  d.validate();
  return d;
}

}  // namespace spincorr
