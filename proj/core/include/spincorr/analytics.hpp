#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spincorr/correlation.hpp"
#include "spincorr/rng.hpp"

namespace spincorr {

// Coincidence counts at one analyzer separation.
struct DatasetRow {
  double theta_rad = 0.0;
  std::uint64_t n_pp = 0, n_pm = 0, n_mp = 0, n_mm = 0;

  std::uint64_t total() const { return n_pp + n_pm + n_mp + n_mm; }
};

struct ExperimentalDataset {
  std::vector<DatasetRow> rows;
  std::string source;

  // Throws std::invalid_argument naming the violated rule: nonempty, row
  // totals >= 1, angles strictly increasing within [0, pi], finite values.
  void validate() const;
};

// CSV columns: theta_rad,n_pp,n_pm,n_mp,n_mm. Header row mandatory, UTF-8,
// decimal point, no thousands separators. Parse errors carry line numbers.
ExperimentalDataset load_dataset(const std::string& path);
void save_dataset(const ExperimentalDataset& d, const std::string& path);

struct AngleEstimate {
  double theta_rad = 0.0;
  double pair_expectation = 0.0;  // (n_pp + n_mm - n_pm - n_mp) / n
  double anticorrelation = 0.0;   // -pair_expectation
  double std_err = 0.0;           // sqrt((1 - E^2) / n)
};

std::vector<AngleEstimate> estimate_anticorrelation(const ExperimentalDataset& d);

struct TestVerdict {
  std::vector<AngleEstimate> estimates;
  double distance_estimate = 0.0;  // trapezoid quadrature, weight 1/pi
  double ci_lower = 0.0, ci_upper = 0.0;
  double alpha = 0.05;
  std::size_t bootstrap_samples = 0;
  double threshold = kDistanceLowerBound;
  bool ruled_out = false;  // iff ci_upper < threshold
  std::string coverage_policy;
  std::uint64_t seed = 0;
};

// Minimum angular coverage demanded of a dataset before the distance test
// is meaningful (a policy of this tool, echoed in every verdict).
inline constexpr const char* kCoveragePolicy =
    "rows >= 8, first angle <= pi/8, last angle >= 7pi/8";

// Estimates the distance of the measured anticorrelation to cos on [0, pi]
// and bootstraps a (1 - alpha) percentile confidence interval by per-row
// multinomial resampling. A local simulation is ruled out when even the
// upper confidence limit stays below the distance bound.
TestVerdict hypothesis_test(const ExperimentalDataset& d, std::size_t bootstrap_B,
                            double alpha, RandomStream stream);

// Draws per-angle counts from Multinomial(n, p) with
// p(eps, eta) = (1 - eps*eta*C(theta)) / 4 for a model anticorrelation C.
ExperimentalDataset synthesize_dataset(const std::function<double(double)>& anticorrelation,
                                       const std::vector<double>& angles,
                                       std::uint64_t counts_per_angle,
                                       RandomStream stream);

}  // namespace spincorr
