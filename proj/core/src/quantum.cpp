#include "spincorr/quantum.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spincorr {

namespace {

using cplx = std::complex<double>;

std::string vec_str(double x, double y, double z) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ", " +
         std::to_string(z) + ")";
}

}  // namespace

Direction::Direction(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kDirectionNormTolerance) {
    throw std::invalid_argument("invalid direction: " + vec_str(x, y, z) +
                                " is not a unit vector (|norm - 1| > 1e-9)");
  }
  x_ = x / norm;
  y_ = y / norm;
  z_ = z / norm;
}

double Direction::angle_to(const Direction& other) const {
  return std::acos(std::clamp(dot(other), -1.0, 1.0));
}

Outcome::Outcome(int epsilon_in, int eta_in) : epsilon(epsilon_in), eta(eta_in) {
  if ((epsilon != 1 && epsilon != -1) || (eta != 1 && eta != -1)) {
    throw std::invalid_argument("outcome values must be -1 or +1");
  }
}

const std::array<Outcome, 4>& all_outcomes() {
  static const std::array<Outcome, 4> outcomes = {
      Outcome(+1, +1), Outcome(+1, -1), Outcome(-1, +1), Outcome(-1, -1)};
  return outcomes;
}

SpinOperator SpinOperator::operator*(const SpinOperator& o) const {
  return SpinOperator{
      m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
      m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
}

bool SpinOperator::is_hermitian(double tol) const {
  return std::abs(m00.imag()) <= tol && std::abs(m11.imag()) <= tol &&
         std::abs(m01 - std::conj(m10)) <= tol;
}

SingletState::SingletState() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  amps_ = {cplx(0.0), cplx(inv_sqrt2), cplx(-inv_sqrt2), cplx(0.0)};
}

SpinOperator pauli_operator(const Direction& a) {
  return SpinOperator{cplx(a.z(), 0.0), cplx(a.x(), -a.y()),
                      cplx(a.x(), a.y()), cplx(-a.z(), 0.0)};
}

std::complex<double> singlet_expectation_complex(const Direction& a,
                                                 const Direction& b) {
  const SpinOperator sa = pauli_operator(a);
  const SpinOperator sb = pauli_operator(b);

  // M = sa (x) sb on the product basis (++, +-, -+, --):
  // M[2i+j][2k+l] = sa[i][k] * sb[j][l].
  const cplx sa_m[2][2] = {{sa.m00, sa.m01}, {sa.m10, sa.m11}};
  const cplx sb_m[2][2] = {{sb.m00, sb.m01}, {sb.m10, sb.m11}};
  cplx m[4][4];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m[2 * i + j][2 * k + l] = sa_m[i][k] * sb_m[j][l];

  const SingletState chi;
  cplx applied[4];
  for (int r = 0; r < 4; ++r) {
    applied[r] = cplx(0.0);
    for (int c = 0; c < 4; ++c) applied[r] += m[r][c] * chi.amplitude(c);
  }
  cplx expectation(0.0);
  for (int r = 0; r < 4; ++r) expectation += std::conj(chi.amplitude(r)) * applied[r];
  return expectation;
}

double singlet_expectation(const Direction& a, const Direction& b) {
  const cplx e = singlet_expectation_complex(a, b);
  if (std::abs(e.imag()) > 1e-12) {
    throw std::logic_error("singlet expectation has nonzero imaginary part");
  }
  return e.real();
}

double singlet_probability(const Direction& a, const Direction& b, const Outcome& o) {
  return (1.0 - static_cast<double>(o.epsilon * o.eta) * a.dot(b)) / 4.0;
}

}  // namespace spincorr
