#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace kdiamond {

/// Working precision in bits. Passed explicitly to every numeric routine.
struct Precision {
  long bits = 128;

  constexpr Precision() = default;
  constexpr explicit Precision(long b) : bits(b) {}

  constexpr Precision doubled() const { return Precision{bits * 2}; }
  friend constexpr bool operator==(Precision, Precision) = default;
  friend constexpr auto operator<=>(Precision, Precision) = default;
};

/// Closed real interval [lo, hi] with MPFR endpoints.
///
/// Every operation rounds the lower endpoint toward -inf and the upper
/// endpoint toward +inf, so the result encloses the exact value of the
/// operation applied to any points of the operands. Binary operations run at
/// the larger of the two operand precisions.
class BigInterval {
 public:
  explicit BigInterval(Precision p = Precision{});
  BigInterval(Precision p, long value);
  BigInterval(Precision p, const mpz_class& value);
  BigInterval(Precision p, const mpq_class& value);
  BigInterval(const BigInterval& other);
  BigInterval(BigInterval&& other) noexcept;
  BigInterval& operator=(const BigInterval& other);
  BigInterval& operator=(BigInterval&& other) noexcept;
  ~BigInterval();

  /// Interval spanning [a.lo, b.hi]; throws std::invalid_argument if empty.
  static BigInterval hull(const BigInterval& a, const BigInterval& b);
  /// Enclosure of pi.
  static BigInterval pi(Precision p);
  /// Enclosure of cos(pi * theta) for exact rational theta.
  static BigInterval cos_pi(Precision p, const mpq_class& theta);
  /// Enclosure of sin(pi * theta) for exact rational theta.
  static BigInterval sin_pi(Precision p, const mpq_class& theta);
  /// [lo, hi] rounded outward to p bits.
  static BigInterval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision p);
  /// Parse a decimal literal and enclose it.
  static BigInterval from_decimal(Precision p, const std::string& text);

  Precision precision() const { return Precision{static_cast<long>(mpfr_get_prec(lo_))}; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  BigInterval operator-() const;
  BigInterval& operator+=(const BigInterval& rhs);
  BigInterval& operator-=(const BigInterval& rhs);
  BigInterval& operator*=(const BigInterval& rhs);
  BigInterval& operator/=(const BigInterval& rhs);

  friend BigInterval operator+(BigInterval a, const BigInterval& b) { return a += b; }
  friend BigInterval operator-(BigInterval a, const BigInterval& b) { return a -= b; }
  friend BigInterval operator*(BigInterval a, const BigInterval& b) { return a *= b; }
  friend BigInterval operator/(BigInterval a, const BigInterval& b) { return a /= b; }

  bool contains(const mpz_class& value) const;
  bool contains(const mpq_class& value) const;
  bool contains_zero() const;
  /// [a.lo, a.hi] is a subset of [b.lo, b.hi].
  bool subset_of(const BigInterval& outer) const;
  bool is_positive() const;  // lo > 0
  bool is_nonnegative() const;

  /// The single integer inside the interval, if there is exactly one.
  std::optional<mpz_class> unique_integer() const;
  /// Nearest integer to the midpoint.
  mpz_class round_mid() const;
  /// Upper bound on hi - lo.
  double width() const;
  double mid_double() const;
  double lo_double() const;
  double hi_double() const;

  /// Decimal strings rounded outward, `digits` significant digits.
  std::string lo_string(int digits = 30) const;
  std::string hi_string(int digits = 30) const;
  std::string mid_string(int digits = 30) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;

  friend BigInterval sqrt(const BigInterval& x);
  friend BigInterval exp(const BigInterval& x);
  friend BigInterval log(const BigInterval& x);
  friend BigInterval sqr(const BigInterval& x);
  friend BigInterval abs(const BigInterval& x);
};

BigInterval sqrt(const BigInterval& x);
BigInterval exp(const BigInterval& x);
BigInterval log(const BigInterval& x);
BigInterval sqr(const BigInterval& x);
BigInterval abs(const BigInterval& x);
BigInterval pow(const BigInterval& x, int exponent);
/// x^(num/den) for x > 0 via exp(log x * num/den).
BigInterval pow(const BigInterval& x, const mpq_class& exponent);

/// a.hi < b.lo
bool certainly_less(const BigInterval& a, const BigInterval& b);
/// a.hi <= b.lo
bool certainly_less_equal(const BigInterval& a, const BigInterval& b);

/// Three-way outcome of comparing two enclosures.
enum class Decision { kTrue, kFalse, kUndecided };

/// Decides a <= b from enclosures.
Decision decide_less_equal(const BigInterval& a, const BigInterval& b);
/// Decides a < b from enclosures.
Decision decide_less(const BigInterval& a, const BigInterval& b);

}  // namespace kdiamond
