#include "spincorr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spincorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_power_of_two(std::size_t n) {
  if (n < 4 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("correlation grid size must be a power of two >= 4");
  }
}

double std_err_at(const CorrelationFunction& c, std::size_t j) {
  return c.std_errs().empty() ? 0.0 : c.std_errs()[j];
}

}  // namespace

CorrelationFunction CorrelationFunction::from_closed_form(
    std::function<double(double)> f, std::size_t grid_n) {
  require_power_of_two(grid_n);
  CorrelationFunction c;
  c.values_.resize(grid_n);
  c.std_errs_.assign(grid_n, 0.0);
  for (std::size_t j = 0; j < grid_n; ++j) {
    c.values_[j] = f(kTwoPi * static_cast<double>(j) / static_cast<double>(grid_n));
  }
  c.evaluator_ = std::move(f);
  return c;
}

CorrelationFunction CorrelationFunction::from_samples(std::vector<double> values,
                                                      std::vector<double> std_errs) {
  require_power_of_two(values.size());
  if (!std_errs.empty() && std_errs.size() != values.size()) {
    throw std::invalid_argument("std_errs size must match values size");
  }
  if (std_errs.empty()) std_errs.assign(values.size(), 0.0);
  CorrelationFunction c;
  c.values_ = std::move(values);
  c.std_errs_ = std::move(std_errs);
  return c;
}

double CorrelationFunction::operator()(double t) const {
  if (evaluator_) return evaluator_(t);
  const double n = static_cast<double>(grid_n());
  double x = std::fmod(t, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  const double pos = x / kTwoPi * n;
  const std::size_t j0 = static_cast<std::size_t>(pos) % grid_n();
  const std::size_t j1 = (j0 + 1) % grid_n();
  const double frac = pos - std::floor(pos);
  return values_[j0] * (1.0 - frac) + values_[j1] * frac;
}

CorrelationFunction cos_correlation(std::size_t grid_n) {
  return CorrelationFunction::from_closed_form([](double t) { return std::cos(t); },
                                               grid_n);
}

void validate_correlation(const CorrelationFunction& c) {
  const auto& v = c.values();
  const std::size_t n = c.grid_n();

  const double tol0 = std::max(5.0 * std_err_at(c, 0), 1e-12);
  if (std::abs(v[0] - 1.0) > tol0) {
    throw std::invalid_argument("correlation invariant violated: C(0) != 1");
  }
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t jr = n - j;
    const double se = std::hypot(std_err_at(c, j), std_err_at(c, jr));
    if (std::abs(v[j] - v[jr]) > std::max(5.0 * se, 1e-12)) {
      throw std::invalid_argument("correlation invariant violated: not even");
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double tol = std::max(5.0 * std_err_at(c, j), 1e-12);
    if (v[j] > 1.0 + tol || v[j] < -1.0 - tol || !std::isfinite(v[j])) {
      throw std::invalid_argument("correlation invariant violated: value outside [-1, 1]");
    }
  }
}

FourierSpectrum fourier_coefficients(const CorrelationFunction& c, std::size_t k_max) {
  const std::size_t n = c.grid_n();
  if (k_max >= n / 2) {
    throw std::invalid_argument("fourier_coefficients: k_max >= N/2 aliases the grid");
  }
  FourierSpectrum s;
  s.grid_n = n;
  s.coefficients.resize(k_max + 1);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k <= k_max; ++k) {
    double cos_sum = 0.0, sin_sum = 0.0, sin_var = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double kt = static_cast<double>(k) * c.t(j);
      const double w_sin = std::sin(kt) / dn;
      cos_sum += std::cos(kt) * c.values()[j];
      sin_sum += w_sin * c.values()[j];
      const double se = std_err_at(c, j);
      sin_var += w_sin * w_sin * se * se;
    }
    const double residue_tol = std::max(1e-10, 5.0 * std::sqrt(sin_var));
    if (std::abs(sin_sum) > residue_tol) {
      throw std::invalid_argument(
          "fourier_coefficients: sine residue exceeds tolerance; input is not even");
    }
    s.coefficients[k] = cos_sum / dn;
  }
  return s;
}

CorrelationFunction reconstruct_from_spectrum(const FourierSpectrum& s,
                                              std::size_t grid_n) {
  const std::vector<double> coeffs = s.coefficients;
  auto series = [coeffs](double t) {
    double acc = coeffs.empty() ? 0.0 : coeffs[0];
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
      acc += 2.0 * coeffs[k] * std::cos(static_cast<double>(k) * t);
    }
    return acc;
  };
  return CorrelationFunction::from_closed_form(series, grid_n);
}

BoundCheckReport check_fourier_bounds(const FourierSpectrum& s, double stat_tol) {
  BoundCheckReport report;
  report.stat_tol = stat_tol;
  report.checks.reserve(s.coefficients.size());
  for (std::size_t k = 0; k < s.coefficients.size(); ++k) {
    const double v = s.coefficients[k];
    const double slack = std::min(v, kCoefficientCap - v);
    const bool pass = slack >= -stat_tol;
    report.checks.push_back(CoefficientCheck{k, v, slack, pass});
    report.pass = report.pass && pass;
  }
  return report;
}

double l2_inner(const CorrelationFunction& f, const CorrelationFunction& g) {
  if (f.grid_n() != g.grid_n()) {
    throw std::invalid_argument("l2_inner: grid sizes differ");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < f.grid_n(); ++j) acc += f.values()[j] * g.values()[j];
  return acc / static_cast<double>(f.grid_n());
}

double l2_norm(const CorrelationFunction& f) { return std::sqrt(l2_inner(f, f)); }

double l2_distance(const CorrelationFunction& f, const CorrelationFunction& g) {
  if (f.grid_n() != g.grid_n()) {
    throw std::invalid_argument("l2_distance: grid sizes differ");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < f.grid_n(); ++j) {
    const double d = f.values()[j] - g.values()[j];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(f.grid_n()));
}

double half_period_distance(const std::vector<double>& angles,
                            const std::vector<double>& values,
                            const std::function<double(double)>& target) {
  if (angles.size() != values.size() || angles.size() < 2) {
    throw std::invalid_argument("half_period_distance: need >= 2 matched samples");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < angles.size(); ++i) {
    const double h = angles[i + 1] - angles[i];
    if (h <= 0.0) {
      throw std::invalid_argument("half_period_distance: angles must increase");
    }
    const double g0 = values[i] - target(angles[i]);
    const double g1 = values[i + 1] - target(angles[i + 1]);
    acc += 0.5 * (g0 * g0 + g1 * g1) * h;
  }
  return std::sqrt(acc / std::numbers::pi);
}

double distance_bound_from_c1(double c1) {
  return std::abs(1.0 - 2.0 * c1) / std::numbers::sqrt2;
}

DistanceReport distance_report(const CorrelationFunction& c) {
  validate_correlation(c);
  const CorrelationFunction cosine = cos_correlation(c.grid_n());

  DistanceReport r;
  r.norm_sq = l2_inner(c, c);
  r.c1 = l2_inner(cosine, c);
  r.distance = l2_distance(c, cosine);
  r.bound = kDistanceLowerBound;
  r.margin = r.distance - r.bound;
  const double dist_sq = r.distance * r.distance;
  r.decomposition_residual = std::abs(dist_sq - (r.norm_sq + 0.5 - 2.0 * r.c1));
  r.c1_within_cap = r.c1 <= kCoefficientCap + 1e-12;
  const double parallel_sq = 0.5 * (1.0 - 2.0 * r.c1) * (1.0 - 2.0 * r.c1);
  r.parallel_bound_holds = dist_sq >= parallel_sq - 1e-10;
  return r;
}

double continuity_modulus_slack(const CorrelationFunction& c, std::size_t eps_steps) {
  if (eps_steps < 1) {
    throw std::invalid_argument("continuity_modulus_slack: eps_steps must be >= 1");
  }
  const std::size_t n = c.grid_n();
  const std::size_t shift = eps_steps % n;
  const double budget = 2.0 * (c.values()[0] - c.values()[shift]);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double diff = c.values()[(j + shift) % n] - c.values()[j];
    worst = std::max(worst, diff * diff - budget);
  }
  return worst;
}

InequalityCheck bell_inequality_check(const CorrelationFunction& c, double theta1,
                                      double theta2, double tolerance) {
  if (theta1 < 0.0 || theta2 < 0.0 || theta1 + theta2 > std::numbers::pi) {
    throw std::invalid_argument(
        "bell_inequality_check: need theta1, theta2 >= 0 and theta1 + theta2 <= pi");
  }
  InequalityCheck r;
  r.lhs = std::abs(c(theta1) - c(theta1 + theta2));
  r.rhs = 1.0 - c(theta2);
  r.tolerance = tolerance;
  r.satisfied = r.lhs <= r.rhs + tolerance;
  return r;
}

double chsh_value(const std::function<double(double)>& pair_expectation,
                  double a, double a2, double b, double b2) {
  return pair_expectation(std::abs(a - b)) - pair_expectation(std::abs(a - b2)) +
         pair_expectation(std::abs(a2 - b)) + pair_expectation(std::abs(a2 - b2));
}

}  // namespace spincorr
