#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spincorr/correlation.hpp"
#include "spincorr/quantum.hpp"
#include "spincorr/rng.hpp"

namespace spincorr {

// Hidden variable: a point on S^2 (unit within 1e-12 by construction).
struct HiddenVariable {
  double x, y, z;

  double dot(const Direction& a) const { return x * a.x() + y * a.y() + z * a.z(); }
};

// Partition of the unit square into four full-height vertical strips, one
// per outcome in the fixed order (+,+), (+,-), (-,+), (-,-), with widths
// equal to the joint quantum probabilities for the generating pair (a, b).
// Classification reduces to a 1-D interval lookup on a single uniform draw.
class RectanglePartition {
 public:
  RectanglePartition(const Direction& a, const Direction& b);

  const std::array<double, 4>& widths() const { return widths_; }
  // Outcome index for u in [0, 1).
  int classify(double u) const;
  const Direction& a() const { return a_; }
  const Direction& b() const { return b_; }

 private:
  Direction a_, b_;
  std::array<double, 4> widths_;
  std::array<double, 4> upper_;  // cumulative widths; upper_[3] == 1
};

inline RectanglePartition build_rectangle_partition(const Direction& a,
                                                    const Direction& b) {
  return RectanglePartition(a, b);
}

// Draws n uniform points of [0,1) (draw i uses stream index i) and counts
// outcomes per cell. Throws std::invalid_argument for n = 0.
std::array<std::uint64_t, 4> sample_wigner(const RectanglePartition& p,
                                           std::uint64_t n, RandomStream stream);

// +1 iff dot(omega, a) > 0, else -1 (the boundary set dot = 0 maps to -1;
// it has measure zero, the choice is fixed for bit-reproducibility).
// Depends only on its own analyzer setting: locality by signature.
int bell_response(const Direction& a, const HiddenVariable& omega);

// Uniform point on S^2: z uniform on [-1,1], azimuth uniform on [0,2pi).
// Sample `index` consumes exactly stream indices 2*index and 2*index + 1.
HiddenVariable sample_hidden_variable(const RandomStream& stream, std::uint64_t index);

// A seeded sampler of the hidden-variable space plus a response map
// f_a(omega) in {-1,+1}. The second analyzer is g_a = -f_a throughout.
struct LocalHiddenVariableModel {
  std::string name;
  std::function<HiddenVariable(const RandomStream&, std::uint64_t)> sample;
  std::function<int(const Direction&, const HiddenVariable&)> response;
};

// The hemisphere model: omega uniform on S^2, f_a = sign(omega . a).
// Its correlation is the triangle wave 1 - 2|t|/pi.
LocalHiddenVariableModel bell_hemisphere_model();

// Closed form of the hemisphere-model correlation: 1 - 2|t|/pi for
// |t| <= pi, extended 2pi-periodically. Even; C(0) = 1.
double bell_correlation_exact(double t);

// Triangle-wave correlation sampled on a uniform grid, with exact evaluator.
CorrelationFunction bell_triangle_correlation(std::size_t grid_n);

// Great circle through `origin` with tangent `partner` (orthonormal pair,
// checked to 1e-9): at(theta) = cos(theta) origin + sin(theta) partner.
class GreatCircle {
 public:
  GreatCircle(const Direction& origin, const Direction& partner);

  Direction at(double theta) const;
  const Direction& origin() const { return origin_; }

 private:
  Direction origin_, partner_;
};

GreatCircle xy_great_circle();  // origin (1,0,0), partner (0,1,0)

// Per-angle correlation estimates with standard errors.
struct CorrelationEstimate {
  std::vector<double> angles;
  std::vector<double> values;
  std::vector<double> std_errs;  // sqrt((1 - C^2) / n)
};

// Monte Carlo estimate of C(theta) = <f_{a0} f_{a(theta)}> on the given
// angles: each hidden variable omega_i is drawn once and reused at every
// angle (common random numbers, as in correlating one process with itself).
CorrelationEstimate simulate_correlation(const LocalHiddenVariableModel& model,
                                         const std::vector<double>& grid,
                                         std::uint64_t n, RandomStream stream,
                                         const GreatCircle& circle = xy_great_circle());

// Same on the uniform grid t_j = 2pi j / grid_n, packaged for analysis.
CorrelationFunction simulate_correlation_grid(const LocalHiddenVariableModel& model,
                                              std::size_t grid_n, std::uint64_t n,
                                              RandomStream stream,
                                              const GreatCircle& circle = xy_great_circle());

}  // namespace spincorr
