#include "spincorr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spincorr {

namespace {

constexpr double kStep = 0.25;        // 1/L with L = 4 (largest Hessian entry)
constexpr double kObjTol = 1e-14;     // stop on objective stalls
constexpr std::size_t kMaxIters = 100000;
constexpr double kBoundTol = 1e-10;   // "at a bound" classification

// min sum_i w_i (x_i - m_i)^2  s.t.  l <= x <= u,  w . x = 1,
// with w = (1, 2, 2, ...), m = (0, 1/2, 0, ...). The normalization weight
// and the quadratic weight coincide, which keeps every formula separable.
struct Problem {
  std::size_t dim;
  std::vector<double> lower, upper, weight, target;
};

Problem make_problem(const SpectrumConstraints& c) {
  if (c.k_max < 1) throw std::invalid_argument("optimizer: k_max must be >= 1");
  if (!(c.lower <= c.upper)) throw std::invalid_argument("optimizer: box lower > upper");
  if (!std::isfinite(c.lower)) throw std::invalid_argument("optimizer: lower bound must be finite");

  Problem p;
  p.dim = c.k_max + 1;
  p.lower.assign(p.dim, c.lower);
  p.upper.assign(p.dim, c.upper);
  if (c.c0_zero) {
    p.lower[0] = 0.0;
    p.upper[0] = 0.0;
  }
  p.weight.assign(p.dim, 2.0);
  p.weight[0] = 1.0;
  p.target.assign(p.dim, 0.0);
  p.target[1] = 0.5;
  return p;
}

void check_feasibility(const Problem& p) {
  double min_reach = 0.0, max_reach = 0.0;
  for (std::size_t i = 0; i < p.dim; ++i) {
    min_reach += p.weight[i] * p.lower[i];
    max_reach += p.weight[i] * p.upper[i];  // may be +inf
  }
  if (min_reach > 1.0 || max_reach < 1.0) {
    throw InfeasibleConstraints(min_reach, max_reach);
  }
}

double objective(const Problem& p, const std::vector<double>& x) {
  double f = 0.0;
  for (std::size_t i = 0; i < p.dim; ++i) {
    const double d = x[i] - p.target[i];
    f += p.weight[i] * d * d;
  }
  return f;
}

std::vector<double> gradient(const Problem& p, const std::vector<double>& x) {
  std::vector<double> g(p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) g[i] = 2.0 * p.weight[i] * (x[i] - p.target[i]);
  return g;
}

// Euclidean projection onto the box intersected with {w . x = 1}:
// x(lambda) = clamp(y + lambda w), with lambda found by bisection on the
// monotone map lambda -> w . x(lambda).
std::vector<double> project(const Problem& p, const std::vector<double>& y) {
  auto value_at = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.dim; ++i) {
      s += p.weight[i] * std::clamp(y[i] + lambda * p.weight[i], p.lower[i], p.upper[i]);
    }
    return s;
  };

  double lo = 0.0, hi = 0.0;
  bool has_infinite_upper = false;
  for (std::size_t i = 0; i < p.dim; ++i) {
    lo = std::min(lo, (p.lower[i] - y[i]) / p.weight[i]);
    if (std::isfinite(p.upper[i])) {
      hi = std::max(hi, (p.upper[i] - y[i]) / p.weight[i]);
    } else {
      has_infinite_upper = true;
    }
  }
  lo -= 1.0;
  hi += 1.0;

  if (has_infinite_upper && value_at(hi) < 1.0) {
    // Past every finite breakpoint only unbounded coordinates still move;
    // the remaining equation is linear in lambda.
    double fixed = 0.0, lin_y = 0.0, lin_w2 = 0.0;
    for (std::size_t i = 0; i < p.dim; ++i) {
      if (std::isfinite(p.upper[i])) {
        fixed += p.weight[i] * std::clamp(y[i] + hi * p.weight[i], p.lower[i], p.upper[i]);
      } else {
        lin_y += p.weight[i] * y[i];
        lin_w2 += p.weight[i] * p.weight[i];
      }
    }
    const double lambda = (1.0 - fixed - lin_y) / lin_w2;
    std::vector<double> x(p.dim);
    for (std::size_t i = 0; i < p.dim; ++i) {
      x[i] = std::clamp(y[i] + lambda * p.weight[i], p.lower[i], p.upper[i]);
    }
    return x;
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (value_at(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);
  std::vector<double> x(p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) {
    x[i] = std::clamp(y[i] + lambda * p.weight[i], p.lower[i], p.upper[i]);
  }

  // Spread any residual normalization error over the interior coordinates.
  double residual = 1.0;
  for (std::size_t i = 0; i < p.dim; ++i) residual -= p.weight[i] * x[i];
  double free_w2 = 0.0;
  for (std::size_t i = 0; i < p.dim; ++i) {
    if (x[i] > p.lower[i] + kBoundTol && x[i] < p.upper[i] - kBoundTol) {
      free_w2 += p.weight[i] * p.weight[i];
    }
  }
  if (free_w2 > 0.0) {
    for (std::size_t i = 0; i < p.dim; ++i) {
      if (x[i] > p.lower[i] + kBoundTol && x[i] < p.upper[i] - kBoundTol) {
        x[i] = std::clamp(x[i] + residual * p.weight[i] / free_w2, p.lower[i], p.upper[i]);
      }
    }
  }
  return x;
}

// Exact solve with a fixed active set: free coordinates share one shift
// delta over their targets (since quadratic and normalization weights
// coincide), so each active-set iteration is closed form.
bool polish(const Problem& p, std::vector<double>& x) {
  enum class State { kFree, kLower, kUpper };
  std::vector<State> state(p.dim, State::kFree);
  for (std::size_t i = 0; i < p.dim; ++i) {
    if (p.upper[i] - p.lower[i] <= kBoundTol) {
      state[i] = State::kLower;  // pinned coordinate
    } else if (x[i] <= p.lower[i] + kBoundTol) {
      state[i] = State::kLower;
    } else if (x[i] >= p.upper[i] - kBoundTol) {
      state[i] = State::kUpper;
    }
  }

  for (std::size_t round = 0; round < 4 * p.dim + 8; ++round) {
    double fixed_sum = 0.0, free_w = 0.0, free_wm = 0.0;
    for (std::size_t i = 0; i < p.dim; ++i) {
      switch (state[i]) {
        case State::kLower: fixed_sum += p.weight[i] * p.lower[i]; break;
        case State::kUpper: fixed_sum += p.weight[i] * p.upper[i]; break;
        case State::kFree:
          free_w += p.weight[i];
          free_wm += p.weight[i] * p.target[i];
          break;
      }
    }
    if (free_w == 0.0) {
      bool exact = std::abs(fixed_sum - 1.0) <= 1e-9;
      if (!exact) return false;
    }
    const double delta = free_w > 0.0 ? (1.0 - fixed_sum - free_wm) / free_w : 0.0;

    std::vector<double> cand(p.dim);
    for (std::size_t i = 0; i < p.dim; ++i) {
      switch (state[i]) {
        case State::kLower: cand[i] = p.lower[i]; break;
        case State::kUpper: cand[i] = p.upper[i]; break;
        case State::kFree: cand[i] = p.target[i] + delta; break;
      }
    }

    // Clamp the worst box violation among free coordinates, if any.
    std::size_t worst_i = p.dim;
    double worst_v = 1e-12;
    bool worst_low = false;
    for (std::size_t i = 0; i < p.dim; ++i) {
      if (state[i] != State::kFree) continue;
      if (p.lower[i] - cand[i] > worst_v) {
        worst_v = p.lower[i] - cand[i];
        worst_i = i;
        worst_low = true;
      }
      if (cand[i] - p.upper[i] > worst_v) {
        worst_v = cand[i] - p.upper[i];
        worst_i = i;
        worst_low = false;
      }
    }
    if (worst_i < p.dim) {
      state[worst_i] = worst_low ? State::kLower : State::kUpper;
      continue;
    }

    // Multiplier signs: nu = 2*delta; release an active coordinate whose
    // multiplier has the wrong sign.
    const double nu_half = delta;
    std::size_t release_i = p.dim;
    double release_v = 1e-12;
    for (std::size_t i = 0; i < p.dim; ++i) {
      if (p.upper[i] - p.lower[i] <= kBoundTol) continue;  // pinned stays pinned
      const double mism = cand[i] - p.target[i];           // = nu_half if optimal free
      if (state[i] == State::kUpper && nu_half - mism < -release_v) {
        release_v = -(nu_half - mism);
        release_i = i;
      }
      if (state[i] == State::kLower && mism - nu_half < -release_v) {
        release_v = -(mism - nu_half);
        release_i = i;
      }
    }
    if (release_i < p.dim) {
      state[release_i] = State::kFree;
      continue;
    }

    x = cand;
    return true;
  }
  return false;
}

std::vector<std::size_t> bound_indices(const Problem& p, const std::vector<double>& x) {
  std::vector<std::size_t> at_bound;
  for (std::size_t i = 0; i < p.dim; ++i) {
    if (x[i] <= p.lower[i] + kBoundTol || x[i] >= p.upper[i] - kBoundTol) {
      at_bound.push_back(i);
    }
  }
  return at_bound;
}

}  // namespace

InfeasibleConstraints::InfeasibleConstraints(double min_reachable, double max_reachable)
    : std::runtime_error("infeasible constraints: c0 + 2 sum c_k = 1 unreachable, box allows [" +
                         std::to_string(min_reachable) + ", " +
                         std::to_string(max_reachable) + "]"),
      min_reachable_(min_reachable),
      max_reachable_(max_reachable) {}

OptimizationResult solve_min_distance(const SpectrumConstraints& constraints) {
  const Problem p = make_problem(constraints);
  check_feasibility(p);

  std::vector<double> x = project(p, p.target);
  double f_prev = objective(p, x);
  std::size_t iters = 0;
  bool converged = false;
  while (iters < kMaxIters) {
    ++iters;
    std::vector<double> y(p.dim);
    const std::vector<double> g = gradient(p, x);
    for (std::size_t i = 0; i < p.dim; ++i) y[i] = x[i] - kStep * g[i];
    x = project(p, y);
    const double f = objective(p, x);
    if (std::abs(f_prev - f) <= kObjTol) {
      converged = true;
      break;
    }
    f_prev = f;
  }

  polish(p, x);

  OptimizationResult result;
  result.spectrum.coefficients = x;
  result.spectrum.grid_n = 0;
  result.objective = objective(p, x);
  result.distance = std::sqrt(result.objective);
  result.active_set = bound_indices(p, x);
  result.iterations = iters;
  result.converged = converged;

  std::vector<double> y(p.dim);
  const std::vector<double> g = gradient(p, x);
  for (std::size_t i = 0; i < p.dim; ++i) y[i] = x[i] - kStep * g[i];
  const std::vector<double> proj = project(p, y);
  double res_sq = 0.0;
  for (std::size_t i = 0; i < p.dim; ++i) {
    const double d = x[i] - proj[i];
    res_sq += d * d;
  }
  result.kkt_residual = std::sqrt(res_sq);
  return result;
}

std::vector<std::pair<std::size_t, double>> bound_approach_curve(
    const std::vector<std::size_t>& k_max_list) {
  std::vector<std::pair<std::size_t, double>> curve;
  curve.reserve(k_max_list.size());
  for (std::size_t k : k_max_list) {
    SpectrumConstraints c;
    c.k_max = k;
    curve.emplace_back(k, solve_min_distance(c).distance);
  }
  return curve;
}

FourierSpectrum sample_feasible_spectrum(std::size_t k_max, StreamGenerator& gen,
                                         const SpectrumConstraints& constraints) {
  if (!std::isfinite(constraints.upper)) {
    throw std::invalid_argument("sample_feasible_spectrum: upper bound must be finite");
  }
  const std::size_t dim = k_max + 1;
  const double lo = constraints.lower, hi = constraints.upper;
  std::vector<double> c(dim);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      c[i] = lo + u * (hi - lo);
    }
    if (constraints.c0_zero) c[0] = 0.0;
    double s = c[0];
    for (std::size_t i = 1; i < dim; ++i) s += 2.0 * c[i];
    if (s < 1e-9) continue;
    bool ok = true;
    for (std::size_t i = 0; i < dim; ++i) {
      c[i] /= s;
      if (c[i] > hi + 1e-15 || c[i] < lo - 1e-15) ok = false;
    }
    if (!ok) continue;
    FourierSpectrum spec;
    spec.coefficients = c;
    spec.grid_n = 0;
    return spec;
  }
  throw std::runtime_error("sample_feasible_spectrum: rejection sampling failed");
}

double verify_never_below_bound(std::size_t trials, std::size_t k_max,
                                RandomStream stream) {
  if (trials < 1) throw std::invalid_argument("verify_never_below_bound: trials >= 1");
  std::size_t grid_n = 256;
  while (grid_n / 2 <= k_max) grid_n *= 2;
  const CorrelationFunction cosine = cos_correlation(grid_n);

  SpectrumConstraints sc;
  sc.k_max = k_max;
  StreamGenerator gen(stream);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const FourierSpectrum spec = sample_feasible_spectrum(k_max, gen, sc);
    const CorrelationFunction c = reconstruct_from_spectrum(spec, grid_n);
    worst = std::min(worst, l2_distance(c, cosine) - kDistanceLowerBound);
  }
  return worst;
}

}  // namespace spincorr
