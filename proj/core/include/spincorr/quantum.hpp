#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace spincorr {

// Input vectors may deviate from unit norm by at most this much; they are
// renormalized on construction.
inline constexpr double kDirectionNormTolerance = 1e-9;

// Unit vector on S^2, a Stern-Gerlach analyzer setting.
class Direction {
 public:
  // Throws std::invalid_argument if |x,y,z| deviates from 1 by more than
  // kDirectionNormTolerance; otherwise stores the renormalized vector.
  Direction(double x, double y, double z);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  double dot(const Direction& other) const {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
  }

  // Unoriented angle in [0, pi]; dot(a, b) == cos(a.angle_to(b)).
  double angle_to(const Direction& other) const;

  Direction operator-() const { return Direction(-x_, -y_, -z_); }

 private:
  double x_, y_, z_;
};

// One joint measurement result (epsilon for the first analyzer, eta for the
// second), each in {-1, +1}.
struct Outcome {
  int epsilon;
  int eta;

  Outcome(int epsilon_in, int eta_in);

  // Fixed enumeration order (+,+)=0, (+,-)=1, (-,+)=2, (-,-)=3, shared by
  // rectangle partitions, count vectors, and dataset columns.
  int index() const { return (epsilon < 0 ? 2 : 0) + (eta < 0 ? 1 : 0); }
};

const std::array<Outcome, 4>& all_outcomes();

// 2x2 complex matrix, row-major entries.
struct SpinOperator {
  std::complex<double> m00, m01, m10, m11;

  std::complex<double> trace() const { return m00 + m11; }
  std::complex<double> det() const { return m00 * m11 - m01 * m10; }
  SpinOperator operator*(const SpinOperator& o) const;
  bool is_hermitian(double tol = 1e-12) const;
};

// Two-spin singlet, amplitudes over the product basis in the fixed order
// (+,+), (+,-), (-,+), (-,-): (0, 1/sqrt2, -1/sqrt2, 0).
class SingletState {
 public:
  SingletState();
  std::complex<double> amplitude(int i) const { return amps_[static_cast<std::size_t>(i)]; }

 private:
  std::array<std::complex<double>, 4> amps_;
};

// sigma(a) = [[a3, a1 - i a2], [a1 + i a2, -a3]]: Hermitian, trace 0,
// det -1, eigenvalues {+1, -1}.
SpinOperator pauli_operator(const Direction& a);

// <chi, sigma(a) (x) sigma(b) chi> evaluated by explicit 4-dimensional
// complex linear algebra. Equals -dot(a, b).
std::complex<double> singlet_expectation_complex(const Direction& a, const Direction& b);

// Real part of the above; throws std::logic_error if the imaginary residue
// exceeds 1e-12 (it cannot for valid inputs).
double singlet_expectation(const Direction& a, const Direction& b);

// Joint outcome probability (1 - eps*eta * dot(a,b)) / 4, in [0, 1/2].
double singlet_probability(const Direction& a, const Direction& b, const Outcome& o);

// The target anticorrelation on a great circle: cos(theta).
inline double quantum_anticorrelation(double theta) { return std::cos(theta); }

}  // namespace spincorr
