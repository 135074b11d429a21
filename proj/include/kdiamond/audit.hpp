#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdiamond/interval.hpp"
#include "kdiamond/special.hpp"

namespace kdiamond {

enum class InequalityId {
  kBesselUpperI1,      // I_1(s) <= sqrt(2 / (pi s)) e^s, s >= 1
  kBesselTwoSidedI2,   // four-term expansion of I_2 with error 3968 / (3 s^4), s >= 231
  kSandwich,           // M(1 - x^-6) <= Delta_k(n) <= M(1 + x^-6), x >= 152
  kRatio,              // I_2 ratio > 1 + pi^4 sqrt(alpha) / (9 x^3) - 1100 / x^4, x >= 152
  kGkBound,            // g_k(n) >= 1 - 10 / x^6 and the final product >= 1, x >= 152
  kRemainderRatio,     // G_k(n) < x^-6, x >= 152
  kTailSum,            // sum_{j >= N} I_2(s / j) <= (2 N^2 / s) I_1(s / N)
  kXThreshold,         // x_k(n) >= 152 exactly from n = 3512
};

std::string to_string(InequalityId id);
std::optional<InequalityId> inequality_from_string(const std::string& name);

enum class Verdict { kCertifiedTrue, kCertifiedFalse, kUndecided, kOutOfRange };

std::string to_string(Verdict v);

/// s = a * sqrt(b) with rationals a, b >= 0; b == 1 for plain rationals.
struct SValue {
  std::string label;
  Rational a = 1;
  Rational b = 1;

  BigInterval enclose(Precision p) const;
};

/// Accepts "231", "231.5", "7/3", "152*sqrt(7/3)" and "sqrt(2)".
SValue parse_s(const std::string& text);

struct AuditPoint {
  std::optional<int> k;
  std::optional<std::int64_t> n;
  std::optional<SValue> s;
  std::optional<std::int64_t> N;
};

struct AuditReport {
  InequalityId id{};
  AuditPoint point;
  Verdict verdict = Verdict::kUndecided;
  long precision_used = 0;
  /// Named decimal enclosures and facts, in output order.
  std::vector<std::pair<std::string, std::string>> values;
  std::string note;
};

struct AuditOptions {
  Precision start{128};
  /// Precision doubles from `start` while undecided, up to this many bits.
  long cap = 4096;
};

/// The sampled n values: each theorem's boundary plus three interior points.
std::vector<std::int64_t> default_points();
std::vector<std::int64_t> boundary_points();

/// G_k(n) = 144 exp(sqrt(alpha) x / 2) / (alpha^{7/4} sqrt(pi) x^{3/2} I_2(sqrt(alpha) x)),
/// the remainder bound divided by the main term.
struct GkValue {
  int k = 1;
  std::int64_t n = 0;
  BigInterval value;
};
GkValue gk(int k, std::int64_t n, Precision p);

/// g_k(n) = (1 - x_n^-6)^2 / ((1 + x_{n-1}^-6)^2 (1 + x_{n+1}^-6)^2).
BigInterval small_gk(int k, std::int64_t n, Precision p);

/// Enclosure of sum_{j >= N} I_2(s / j), summed over the Bessel series with
/// Hurwitz zeta values zeta(2m + 2, N).
BigInterval i2_tail_sum(const BigInterval& s, std::int64_t N, Precision p);

AuditReport audit_bessel_upper_i1(const SValue& s, const AuditOptions& opt = {});
AuditReport audit_bessel_two_sided(const SValue& s, const AuditOptions& opt = {});
AuditReport audit_sandwich(int k, std::int64_t n, const AuditOptions& opt = {});
AuditReport audit_ratio(int k, std::int64_t n, const AuditOptions& opt = {});
AuditReport audit_logconcavity_chain(int k, std::int64_t n, const AuditOptions& opt = {});
AuditReport audit_remainder_ratio(int k, std::int64_t n, const AuditOptions& opt = {});
AuditReport audit_tail_sum(const SValue& s, std::int64_t N, const AuditOptions& opt = {});
AuditReport audit_x_threshold(int k, const AuditOptions& opt = {});

/// Runs independent audits concurrently; the result keeps the task order.
std::vector<AuditReport> run_audits(const std::vector<std::function<AuditReport()>>& tasks);

struct AuditSummaryRow {
  InequalityId id{};
  int points = 0;
  int certified = 0;
  int refuted = 0;
  int undecided = 0;
  int out_of_range = 0;
  long max_precision = 0;
};

/// One row per inequality present, in enum order.
std::vector<AuditSummaryRow> summarize(const std::vector<AuditReport>& reports);

}  // namespace kdiamond
