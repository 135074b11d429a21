#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kdiamond/interval.hpp"
#include "kdiamond/qseries.hpp"

namespace kdiamond {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;

/// num/den in lowest terms. GMP rational arithmetic requires canonical operands.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Raised when an enclosure is too wide to decide what the caller asked.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dedekind sum s(h, j) = sum_{r=1}^{j-1} ((r/j)) ((h r / j)), with the
/// sawtooth ((x)) = x - floor(x) - 1/2 for non-integral x and 0 otherwise.
/// Requires j >= 1; h may be any integer.
Rational dedekind_sum(std::int64_t h, std::int64_t j);

/// Phase of one summand of A_j(n), as a rational multiple of pi.
struct KloostermanTerm {
  std::int64_t h = 0;
  /// -sum_r delta_r s(m_r h / g_r, j / g_r), g_r = gcd(m_r, j).
  Rational dedekind_phase;
};

/// The h-indexed Dedekind phases of A_j for an eta-quotient; independent of n.
std::vector<KloostermanTerm> kloosterman_phases(const EtaQuotient& q, std::int64_t j);

/// Real and imaginary enclosures of A_j(n).
struct ComplexEnclosure {
  BigInterval re;
  BigInterval im;
};

/// A_j(n) = sum over 0 <= h < j with gcd(h, j) = 1 of exp(pi i theta_h(n)),
/// theta_h(n) = -2 h n / j + dedekind_phase(h). Reduced exactly mod 2 before
/// the trigonometric evaluation.
ComplexEnclosure a_hat_components(const std::vector<KloostermanTerm>& phases, std::int64_t j,
                                  std::int64_t n, Precision p);
ComplexEnclosure a_hat_components(std::int64_t j, std::int64_t n, const EtaQuotient& q, Precision p);

/// Real enclosure of A_j(n). Throws PrecisionExhausted if the imaginary part
/// is not enclosed around zero.
BigInterval a_hat(std::int64_t j, std::int64_t n, const EtaQuotient& q, Precision p);

/// Order of a modified Bessel function, restricted to nonnegative multiples
/// of 1/2.
class BesselOrder {
 public:
  constexpr BesselOrder() = default;
  static constexpr BesselOrder integer(int nu) { return BesselOrder(2 * nu); }
  static constexpr BesselOrder half_integer(int twice_nu) { return BesselOrder(twice_nu); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  Rational value() const { return make_rational(twice_, 2); }

 private:
  constexpr explicit BesselOrder(int twice) : twice_(twice) {
    if (twice < 0) throw std::invalid_argument("Bessel order must be nonnegative");
  }
  int twice_ = 0;
};

/// Enclosure of I_nu(s) = sum_r (s/2)^{2r+nu} / (r! Gamma(r+nu+1)) for s >= 0.
///
/// Each endpoint is summed with directed rounding; the upper endpoint adds
/// the geometric majorant t_r * rho / (1 - rho) of the remaining terms.
BigInterval bessel_i(BesselOrder nu, const BigInterval& s, Precision p);
inline BigInterval bessel_i(int nu, const BigInterval& s, Precision p) {
  return bessel_i(BesselOrder::integer(nu), s, p);
}

/// Enclosure of pi with width at most 2^{2-p}.
BigInterval pi_interval(Precision p);

}  // namespace kdiamond
