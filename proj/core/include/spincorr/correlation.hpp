#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace spincorr {

// Upper bound 4/pi^2 on every cosine coefficient of the correlation function
// of a 2pi-periodic, {-1,+1}-valued, mean-square-continuous process.
inline constexpr double kCoefficientCap =
    4.0 / (std::numbers::pi * std::numbers::pi);

// Lower bound (1 - 8/pi^2)/sqrt(2) ~= 0.13395 on the L2 distance between any
// such correlation function and cos.
inline constexpr double kDistanceLowerBound =
    (1.0 - 8.0 / (std::numbers::pi * std::numbers::pi)) / std::numbers::sqrt2;

// Even 2pi-periodic correlation function sampled on the uniform grid
// t_j = 2pi j / N, N a power of two. Carries per-sample standard errors
// (zero for closed forms) and, when available, an exact evaluator.
class CorrelationFunction {
 public:
  static CorrelationFunction from_closed_form(std::function<double(double)> f,
                                              std::size_t grid_n);
  // Monte Carlo or file-loaded samples; std_errs may be empty (treated as 0).
  static CorrelationFunction from_samples(std::vector<double> values,
                                          std::vector<double> std_errs);

  std::size_t grid_n() const { return values_.size(); }
  double t(std::size_t j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(j) /
           static_cast<double>(grid_n());
  }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& std_errs() const { return std_errs_; }
  bool exact() const { return static_cast<bool>(evaluator_); }

  // Exact evaluator when present, else periodic linear interpolation.
  double operator()(double t) const;

 private:
  CorrelationFunction() = default;
  std::vector<double> values_;
  std::vector<double> std_errs_;
  std::function<double(double)> evaluator_;
};

CorrelationFunction cos_correlation(std::size_t grid_n);

// Throws std::invalid_argument naming the violated rule: C(0) = 1,
// evenness, range [-1, 1]. Closed forms are held to 1e-12; sampled data to
// 5 (combined) standard errors.
void validate_correlation(const CorrelationFunction& c);

// Real cosine coefficients c_k, k = 0..k_max (c_{-k} = c_k implied).
struct FourierSpectrum {
  std::vector<double> coefficients;
  std::size_t grid_n = 0;  // quadrature grid size used; 0 for synthetic spectra

  std::size_t k_max() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

// Periodic rectangle-rule quadrature c_k = (1/N) sum_j cos(k t_j) C(t_j).
// Spectrally accurate for smooth C, O(N^-2) for kinked C. Requires
// k_max < N/2 (aliasing), and checks that the sine residue of each
// coefficient vanishes (<= max(1e-10, 5 propagated sigma)); a violation
// means the input is not even and throws std::invalid_argument.
FourierSpectrum fourier_coefficients(const CorrelationFunction& c, std::size_t k_max);

// C(t) = c_0 + 2 sum_{k>=1} c_k cos(k t), evaluated exactly.
CorrelationFunction reconstruct_from_spectrum(const FourierSpectrum& s,
                                              std::size_t grid_n);

struct CoefficientCheck {
  std::size_t k;
  double value;
  double slack;  // min(value, cap - value): negative when outside [0, cap]
  bool pass;     // slack >= -stat_tol
};

struct BoundCheckReport {
  std::vector<CoefficientCheck> checks;
  double stat_tol = 0.0;
  bool pass = true;  // fail iff some slack < -stat_tol
};

BoundCheckReport check_fourier_bounds(const FourierSpectrum& s, double stat_tol);

// Periodic rectangle-rule quadrature of (1/2pi) integral f g over [0, 2pi).
// Both functions must share the grid size.
double l2_inner(const CorrelationFunction& f, const CorrelationFunction& g);
double l2_norm(const CorrelationFunction& f);
double l2_distance(const CorrelationFunction& f, const CorrelationFunction& g);

// Half-period form: sqrt((1/pi) integral_0^pi (C - target)^2), trapezoid on
// an increasing (possibly non-uniform) angle grid. Equal to l2_distance for
// even integrands sampled over the full period.
double half_period_distance(const std::vector<double>& angles,
                            const std::vector<double>& values,
                            const std::function<double(double)>& target);

// Distance forced by the component parallel to cos: |1 - 2 c1| / sqrt(2).
// Decreasing in c1 on [0, 1/2]; equals kDistanceLowerBound at c1 = cap.
double distance_bound_from_c1(double c1);

struct DistanceReport {
  double norm_sq = 0.0;    // ||C||^2
  double c1 = 0.0;         // <cos, C>
  double distance = 0.0;   // ||C - cos||
  double bound = kDistanceLowerBound;
  double margin = 0.0;     // distance - bound
  // |dist^2 - (norm_sq + 1/2 - 2 c1)|, grid-exact (<= 1e-10).
  double decomposition_residual = 0.0;
  bool c1_within_cap = true;             // c1 <= 4/pi^2 + 1e-12
  bool parallel_bound_holds = true;      // dist^2 >= (1 - 2 c1)^2 / 2 - 1e-10
};

// Validates C, then reports ||C||^2, c1, ||C - cos||, the bound and margin.
DistanceReport distance_report(const CorrelationFunction& c);

// max over grid points t and eps = eps_steps * (2pi/N) of
// |C(t+eps) - C(t)|^2 - 2 (C(0) - C(eps)). Nonpositive (up to noise) for
// every correlation function of a {-1,+1}-valued process; positive slack
// flags data no such process can produce.
double continuity_modulus_slack(const CorrelationFunction& c, std::size_t eps_steps);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;  // lhs <= rhs + tolerance
  double tolerance = 0.0;
};

// Three-direction correlation inequality |C(t1) - C(t1+t2)| <= 1 - C(t2)
// for a colinear triple on the great circle. Requires t1, t2 >= 0 and
// t1 + t2 <= pi.
InequalityCheck bell_inequality_check(const CorrelationFunction& c, double theta1,
                                      double theta2, double tolerance = 1e-12);

// Four-setting combination S = E(|a-b|) - E(|a-b2|) + E(|a2-b|) + E(|a2-b2|)
// of the measured pair expectation E; |S| <= 2 classically, 2 sqrt2 for the
// singlet.
double chsh_value(const std::function<double(double)>& pair_expectation,
                  double a, double a2, double b, double b2);

}  // namespace spincorr
