#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kdiamond/audit.hpp"
#include "kdiamond/rademacher.hpp"
#include "kdiamond/special.hpp"
#include "kdiamond/turan.hpp"

namespace kdiamond {

// Serialized numbers that are not machine integers are decimal strings; field
// order is fixed so identical inputs give byte-identical output.

/// One n of an exact-versus-series comparison.
struct VerifyRow {
  int k = 1;
  std::int64_t n = 0;
  mpz_class exact;
  std::string series_mid;
  std::string main_term_mid;
  std::string error_bound;
  std::string tail;
  std::int64_t truncation = 0;
  long precision = 0;
  /// The enclosure held exactly one integer before the precision cap.
  bool isolated = false;
  bool round_trip = false;
  bool within_envelope = false;
};

/// Evaluates the series at n with automatic truncation and precision and
/// compares against the exact coefficient; `engine` must be built for Delta_k.
VerifyRow verify_point(const SussmanEngine& engine, int k, std::int64_t n, const mpz_class& exact,
                       long precision_cap = 4096);

std::string coeff_json(int k, std::int64_t n, const mpz_class& value);
std::string verify_json(const VerifyRow& row);
std::string scan_json(const TuranScanResult& r);
std::string audit_json(const AuditReport& r);
std::string violations_json(int k, std::int64_t max_a, std::int64_t max_b,
                            const std::vector<MultiplicativeViolation>& v);

std::string coeff_csv_header();
std::string coeff_csv(std::int64_t n, const mpz_class& value);
std::string verify_csv_header();
std::string verify_csv(const VerifyRow& row);
std::string audit_csv_header();
std::string audit_csv(const AuditReport& r);
std::string violations_csv_header();
std::string violations_csv(const MultiplicativeViolation& v);

/// Minimal-shift table: one row per k, one column per d (blank when unstable).
std::string scan_table_csv(const std::vector<TuranScanResult>& results);
/// Plain-text summary: inequality, points, certified, max precision.
std::string audit_summary_table(const std::vector<AuditSummaryRow>& rows);

/// Reference minimal shifts N_{Delta_k}(d), d = 2..13, for k = 1, 2.
const std::vector<std::int64_t>& reference_minimal_shifts(int k);
/// Reference alpha_k(j) and beta_k(j), j = 1..10, for k = 1, 2.
const std::vector<Rational>& reference_alpha(int k);
const std::vector<Rational>& reference_beta(int k);

/// Markdown rendering of computed versus reference values for both tables,
/// with a match column. `scans` must hold k = 1, 2 at d = 2..13.
std::string seed_table_markdown(const std::vector<TuranScanResult>& scans);

}  // namespace kdiamond
