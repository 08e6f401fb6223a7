#include "spincorr/hv_models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spincorr {

RectanglePartition::RectanglePartition(const Direction& a, const Direction& b)
    : a_(a), b_(b) {
  const auto& outcomes = all_outcomes();
  double cum = 0.0;
  for (int i = 0; i < 4; ++i) {
    widths_[static_cast<std::size_t>(i)] = singlet_probability(a, b, outcomes[static_cast<std::size_t>(i)]);
    cum += widths_[static_cast<std::size_t>(i)];
    upper_[static_cast<std::size_t>(i)] = cum;
  }
  upper_[3] = 1.0;  // absorb rounding in the final boundary
}

int RectanglePartition::classify(double u) const {
  for (int i = 0; i < 3; ++i) {
    if (u < upper_[static_cast<std::size_t>(i)]) return i;
  }
  return 3;
}

std::array<std::uint64_t, 4> sample_wigner(const RectanglePartition& p,
                                           std::uint64_t n, RandomStream stream) {
  if (n == 0) throw std::invalid_argument("sample_wigner: empty sample (n = 0)");
  std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
  for (std::uint64_t i = 0; i < n; ++i) {
    counts[static_cast<std::size_t>(p.classify(stream.uniform_at(i)))]++;
  }
  return counts;
}

int bell_response(const Direction& a, const HiddenVariable& omega) {
  return omega.dot(a) > 0.0 ? 1 : -1;
}

HiddenVariable sample_hidden_variable(const RandomStream& stream, std::uint64_t index) {
  const double z = 2.0 * stream.uniform_at(2 * index) - 1.0;
  const double phi = 2.0 * std::numbers::pi * stream.uniform_at(2 * index + 1);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return HiddenVariable{r * std::cos(phi), r * std::sin(phi), z};
}

LocalHiddenVariableModel bell_hemisphere_model() {
  return LocalHiddenVariableModel{
      "bell",
      [](const RandomStream& s, std::uint64_t i) { return sample_hidden_variable(s, i); },
      [](const Direction& a, const HiddenVariable& w) { return bell_response(a, w); }};
}

double bell_correlation_exact(double t) {
  const double r = std::remainder(t, 2.0 * std::numbers::pi);  // [-pi, pi]
  return 1.0 - 2.0 * std::abs(r) / std::numbers::pi;
}

CorrelationFunction bell_triangle_correlation(std::size_t grid_n) {
  return CorrelationFunction::from_closed_form(bell_correlation_exact, grid_n);
}

GreatCircle::GreatCircle(const Direction& origin, const Direction& partner)
    : origin_(origin), partner_(partner) {
  if (std::abs(origin.dot(partner)) > 1e-9) {
    throw std::invalid_argument("great circle: origin and partner must be orthogonal");
  }
}

Direction GreatCircle::at(double theta) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Direction(c * origin_.x() + s * partner_.x(),
                   c * origin_.y() + s * partner_.y(),
                   c * origin_.z() + s * partner_.z());
}

GreatCircle xy_great_circle() {
  return GreatCircle(Direction(1.0, 0.0, 0.0), Direction(0.0, 1.0, 0.0));
}

CorrelationEstimate simulate_correlation(const LocalHiddenVariableModel& model,
                                         const std::vector<double>& grid,
                                         std::uint64_t n, RandomStream stream,
                                         const GreatCircle& circle) {
  if (grid.empty()) throw std::invalid_argument("simulate_correlation: empty grid");
  if (n == 0) throw std::invalid_argument("simulate_correlation: n must be >= 1");

  const Direction base = circle.origin();
  std::vector<Direction> settings;
  settings.reserve(grid.size());
  for (double theta : grid) settings.push_back(circle.at(theta));

  std::vector<std::int64_t> acc(grid.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const HiddenVariable omega = model.sample(stream, i);
    const int f0 = model.response(base, omega);
    for (std::size_t j = 0; j < settings.size(); ++j) {
      acc[j] += static_cast<std::int64_t>(f0 * model.response(settings[j], omega));
    }
  }

  CorrelationEstimate est;
  est.angles = grid;
  est.values.resize(grid.size());
  est.std_errs.resize(grid.size());
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double c = static_cast<double>(acc[j]) / dn;
    est.values[j] = c;
    est.std_errs[j] = std::sqrt(std::max(0.0, 1.0 - c * c) / dn);
  }
  return est;
}

CorrelationFunction simulate_correlation_grid(const LocalHiddenVariableModel& model,
                                              std::size_t grid_n, std::uint64_t n,
                                              RandomStream stream,
                                              const GreatCircle& circle) {
  std::vector<double> grid(grid_n);
  for (std::size_t j = 0; j < grid_n; ++j) {
    grid[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_n);
  }
  CorrelationEstimate est = simulate_correlation(model, grid, n, stream, circle);
  return CorrelationFunction::from_samples(std::move(est.values), std::move(est.std_errs));
}

}  // namespace spincorr
