#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kdiamond {

/// One factor (q^m; q^m)_inf^delta of an eta-quotient.
struct EtaFactor {
  std::int64_t m = 1;
  std::int64_t delta = 0;

  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// Finite product of Euler factors prod_r (q^{m_r}; q^{m_r})_inf^{delta_r}.
///
/// The m_r are distinct positive integers and every delta_r is nonzero; the
/// constructor rejects anything else with std::invalid_argument.
class EtaQuotient {
 public:
  explicit EtaQuotient(std::vector<EtaFactor> factors);

  /// Generating function of broken k-diamond partitions:
  /// (q^2;q^2)(q^{2k+1};q^{2k+1}) / ((q;q)^3 (q^{4k+2};q^{4k+2})).
  static EtaQuotient broken_diamond(int k);
  /// 1/(q;q)_inf, the ordinary partition function.
  static EtaQuotient partitions();

  const std::vector<EtaFactor>& factors() const { return factors_; }
  /// n0 = -sum m_r delta_r.
  std::int64_t n0() const;
  /// lcm of the m_r.
  std::int64_t period() const;
  /// sum of the delta_r.
  std::int64_t delta_sum() const;

  std::string to_string() const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::vector<EtaFactor> factors_;
};

/// Truncated integer power series g(0..N). Index n is the coefficient of q^n
/// after removing the q^{-n0/24} prefactor.
struct ExactSeries {
  std::vector<mpz_class> coeffs;

  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const mpz_class& operator[](std::size_t n) const { return coeffs.at(n); }
  std::span<const mpz_class> view() const { return coeffs; }
};

/// a*b mod q^{N+1}, N = min(order(a), order(b)).
ExactSeries multiply_truncated(const ExactSeries& a, const ExactSeries& b);

/// (q^m;q^m)_inf^delta mod q^{N+1}.
ExactSeries euler_factor_series(std::int64_t m, std::int64_t delta, std::size_t order);

/// Coefficients of q^{n0/24} * prod (q^{m_r};q^{m_r})^{delta_r} up to q^N,
/// multiplying factors in the order given.
ExactSeries eta_quotient_coeffs(const EtaQuotient& q, std::size_t order);

/// Delta_k(0..N). Requires k >= 1.
ExactSeries delta_coeffs(int k, std::size_t order);

/// Exact JSON array of decimal strings.
std::string series_to_json(const ExactSeries& s);
/// CSV with header "n,coefficient".
std::string series_to_csv(const ExactSeries& s);

}  // namespace kdiamond
