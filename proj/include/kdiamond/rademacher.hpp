#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdiamond/interval.hpp"
#include "kdiamond/qseries.hpp"
#include "kdiamond/special.hpp"

namespace kdiamond {

/// Constants entering Sussman's Rademacher-type series for an eta-quotient.
/// The j-indexed tables hold one full period j = 1..period and are read
/// periodically.
struct SussmanConstants {
  Rational c1;
  std::int64_t period = 1;
  /// c2(j)^2 = prod_r (gcd(m_r, j) / m_r)^{delta_r}; c2 itself is the square root.
  std::vector<Rational> c2_squared;
  /// c3(j) = -sum_r delta_r gcd(m_r, j)^2 / m_r.
  std::vector<Rational> c3;
  /// beta(j) = min_r gcd(m_r, j)^2 / m_r - c3(j) / 24.
  std::vector<Rational> beta;

  const Rational& c2_squared_at(std::int64_t j) const { return c2_squared.at(index(j)); }
  const Rational& c3_at(std::int64_t j) const { return c3.at(index(j)); }
  const Rational& beta_at(std::int64_t j) const { return beta.at(index(j)); }

 private:
  std::size_t index(std::int64_t j) const;
};

SussmanConstants constants(const EtaQuotient& q);

/// Outcome of checking the hypotheses c1 > 0 and beta(j) >= 0.
struct Applicability {
  bool applicable = false;
  /// Smallest j in one period with beta(j) < 0, when that is the failure.
  std::optional<std::int64_t> witness;
  std::string reason;
};

Applicability applicable(const EtaQuotient& q);

/// Thrown when the series is requested for a quotient failing the hypotheses.
class InapplicableError : public std::domain_error {
 public:
  InapplicableError(const std::string& what, std::optional<std::int64_t> witness)
      : std::domain_error(what), witness_(witness) {}
  std::optional<std::int64_t> witness() const { return witness_; }

 private:
  std::optional<std::int64_t> witness_;
};

/// x_k(n) = pi sqrt(24 n - (2k + 2)) / 6.
struct XShift {
  int k = 1;
  std::int64_t n = 0;
  BigInterval value;
};

/// Throws std::domain_error when 24 n <= 2k + 2.
XShift x_shift(int k, std::int64_t n, Precision p);

/// pi sqrt(24 n - n0) / 6 for a general quotient; requires 24 n > n0.
BigInterval shifted_argument(const EtaQuotient& q, std::int64_t n, Precision p);

/// alpha_k(1) = (5k + 2) / (2k + 1).
Rational alpha_one(int k);

struct MainTerm {
  int k = 1;
  std::int64_t n = 0;
  BigInterval value;
};

/// M_k(n) = alpha_k(1) pi^3 / (18 x^2) * I_2(sqrt(alpha_k(1)) x), k in {1, 2}.
MainTerm main_term(int k, std::int64_t n, Precision p);

/// 8 pi^{5/2} / (alpha^{3/4} x^{7/2}) * exp(sqrt(alpha) x / 2), k in {1, 2}.
BigInterval error_bound(int k, std::int64_t n, Precision p);

/// A truncated evaluation of the series with its certified tail.
struct RademacherValue {
  /// partial_sum widened by [-tail, tail].
  BigInterval enclosure;
  BigInterval partial_sum;
  /// Upper bound (hi endpoint) on the absolute value of the omitted terms.
  BigInterval tail;
  std::int64_t truncation = 0;
  Precision precision;
};

/// Sussman's exact series for the coefficients of an applicable eta-quotient.
///
/// Construction checks the hypotheses and throws InapplicableError with the
/// witness j on failure. Evaluations are const and deterministic; phases of
/// the Kloosterman sums are cached for j up to the prepared bound.
class SussmanEngine {
 public:
  explicit SussmanEngine(EtaQuotient q);

  const EtaQuotient& quotient() const { return q_; }
  const SussmanConstants& constants() const { return constants_; }
  BesselOrder order() const { return order_; }

  /// Caches Kloosterman phases for j <= max_j.
  void prepare(std::int64_t max_j);

  /// Certified bound on |sum_{j > J} term_j(n)|.
  BigInterval tail_bound(std::int64_t n, std::int64_t truncation, Precision p) const;
  /// Smallest J on the doubling schedule 1, 2, 4, ... with tail(J) < 1/4.
  std::int64_t choose_truncation(std::int64_t n) const;
  /// Working precision large enough to resolve the integer part of g(n).
  Precision suggested_precision(std::int64_t n, std::int64_t truncation) const;

  /// Sum of terms j = 1..J plus the tail enclosure. J = 0 selects
  /// choose_truncation(n).
  RademacherValue evaluate(std::int64_t n, std::int64_t truncation, Precision p) const;
  /// One term of the series.
  BigInterval term(std::int64_t n, std::int64_t j, Precision p) const;

  /// The integer g(n), escalating precision from suggested_precision until
  /// the enclosure holds exactly one integer. Throws PrecisionExhausted past
  /// the cap.
  mpz_class exact_value(std::int64_t n, long precision_cap = 4096) const;

 private:
  const std::vector<KloostermanTerm>& phases(std::int64_t j, std::vector<KloostermanTerm>& scratch) const;
  void check_n(std::int64_t n) const;

  EtaQuotient q_;
  SussmanConstants constants_;
  BesselOrder order_;
  Rational c2_max_squared_;
  Rational c3_max_;
  std::map<std::int64_t, std::vector<KloostermanTerm>> phase_cache_;
};

/// Rademacher evaluation of Delta_k(n) for k in {1, 2}; J = 0 means automatic.
/// For k >= 3 throws InapplicableError carrying witness j = 1.
RademacherValue rademacher_eval(int k, std::int64_t n, std::int64_t truncation, Precision p);

/// Truncation selected for Delta_k(n).
std::int64_t choose_truncation(int k, std::int64_t n);

}  // namespace kdiamond
