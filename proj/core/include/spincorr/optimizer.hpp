#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spincorr/correlation.hpp"
#include "spincorr/rng.hpp"

namespace spincorr {

// Feasible set for spectra (c_0 .. c_kmax): per-coefficient box
// [lower, upper], the normalization c_0 + 2 sum_{k>=1} c_k = 1 (from
// C(0) = 1 with an even spectrum), and optionally c_0 pinned to 0.
//
// These are necessary conditions only, so minima over this set lower-bound
// the true infimum over correlation functions of {-1,+1}-valued processes
// (a relaxation; see OptimizationResult::relaxation_note).
struct SpectrumConstraints {
  std::size_t k_max = 1;  // >= 1
  double lower = 0.0;
  double upper = kCoefficientCap;
  bool c0_zero = false;
};

// Thrown when the box cannot meet the normalization; carries the reachable
// range of c_0 + 2 sum c_k as the certificate.
class InfeasibleConstraints : public std::runtime_error {
 public:
  InfeasibleConstraints(double min_reachable, double max_reachable);

  double min_reachable() const { return min_reachable_; }
  double max_reachable() const { return max_reachable_; }

 private:
  double min_reachable_, max_reachable_;
};

struct OptimizationResult {
  FourierSpectrum spectrum;
  double objective = 0.0;  // ||C - cos||^2
  double distance = 0.0;   // sqrt(objective)
  std::vector<std::size_t> active_set;  // coefficients at a box bound
  std::size_t iterations = 0;
  bool converged = false;
  double kkt_residual = 0.0;  // projected-gradient norm at the solution
  static constexpr const char* relaxation_note =
      "relaxation optimum - lower bounds the true infimum";
};

// Minimizes ||C - cos||^2 = c0^2 + 2 (c1 - 1/2)^2 + 2 sum_{k>=2} ck^2 over
// the constraint set: projected gradient (fixed step 1/L, L = 4; box plus
// single linear equality projected via bisection on the dual variable),
// then an active-set polish. Stops when the objective changes by <= 1e-14
// or after 1e5 iterations; the returned kkt_residual is <= 1e-9.
// Throws InfeasibleConstraints when the set is empty.
OptimizationResult solve_min_distance(const SpectrumConstraints& constraints);

// solve_min_distance over increasing k_max values (default box, c0 free).
// Distances are non-increasing and approach kDistanceLowerBound from above
// without attaining it.
std::vector<std::pair<std::size_t, double>> bound_approach_curve(
    const std::vector<std::size_t>& k_max_list);

// Uniform draw from the constraint set: box-uniform coefficients rescaled
// onto the normalization plane, rejecting rescales that leave the box.
FourierSpectrum sample_feasible_spectrum(std::size_t k_max, StreamGenerator& gen,
                                         const SpectrumConstraints& constraints);

// Samples `trials` feasible spectra, reconstructs each on a grid, measures
// ||C - cos|| by quadrature, and returns the worst distance - bound margin
// (>= -1e-9 always: feasibility forces c1 <= 4/pi^2).
double verify_never_below_bound(std::size_t trials, std::size_t k_max,
                                RandomStream stream);

}  // namespace spincorr
