#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kdiamond {

/// Dense integer polynomial, coefficients from degree 0 upward with no
/// trailing zeros. The zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& leading() const { return coeffs_.back(); }

  IntPoly derivative() const;
  /// Divides out the (positive) gcd of the coefficients.
  IntPoly primitive() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

/// Sturm chain P, P', -rem(P, P'), ... with every member scaled by a positive
/// constant to stay integral. The last member is gcd(P, P') up to scaling.
std::vector<IntPoly> sturm_sequence(const IntPoly& p);

/// Number of distinct real roots of p (multiple roots counted once).
int count_distinct_real_roots(const IntPoly& p);

/// True iff every complex root of p is real. Decided exactly: p is hyperbolic
/// iff its distinct real roots number deg p - deg gcd(p, p'). Nonzero
/// constants are hyperbolic; the zero polynomial is rejected.
bool is_hyperbolic(const IntPoly& p);

/// J^{d,n}(X) = sum_{i=0}^{d} binom(d, i) a_{n+i} X^i.
struct JensenPoly {
  int d = 0;
  std::int64_t n = 0;
  IntPoly poly;
};

/// Throws std::out_of_range if the sequence does not cover n..n+d.
JensenPoly jensen(std::span<const mpz_class> seq, int d, std::int64_t n);

/// a_n^2 >= a_{n-1} a_{n+1}; requires n >= 1.
bool log_concave_at(std::span<const mpz_class> seq, std::int64_t n);

/// 4(a_n^2 - a_{n-1}a_{n+1})(a_{n+1}^2 - a_n a_{n+2}) >= (a_n a_{n+1} - a_{n-1} a_{n+2})^2.
bool turan3_at(std::span<const mpz_class> seq, std::int64_t n);

enum class ScanStatus { kStable, kUnstableAtHorizon };

/// Minimal shift N with J^{d,n} hyperbolic for every N <= n <= horizon.
struct TuranScanResult {
  int k = 0;  // 0 when the sequence is not a Delta_k
  int d = 0;
  std::int64_t horizon = 0;
  /// Absent when the scan is unstable at the horizon.
  std::optional<std::int64_t> minimal_shift;
  /// Shifts below N where hyperbolicity fails, ascending.
  std::vector<std::int64_t> failures;
  ScanStatus status = ScanStatus::kStable;
};

/// Scans n = 0..horizon. A failure within `margin` of the horizon marks the
/// scan unstable instead of claiming an N; margin < 0 picks horizon / 4.
TuranScanResult scan_minimal_shift(std::span<const mpz_class> seq, int d, std::int64_t horizon,
                                   std::int64_t margin = -1, int k = 0);

/// Pairs (a, b) with 1 <= a <= A, 1 <= b <= B and a_a a_b < a_{a+b}.
struct MultiplicativeViolation {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const MultiplicativeViolation&, const MultiplicativeViolation&) = default;
};

std::vector<MultiplicativeViolation> multiplicative_check(std::span<const mpz_class> seq, std::int64_t max_a,
                                                          std::int64_t max_b);
/// Same check on Delta_k, computing the coefficients it needs.
std::vector<MultiplicativeViolation> multiplicative_check(int k, std::int64_t max_a, std::int64_t max_b);

}  // namespace kdiamond
