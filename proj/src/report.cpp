#include "kdiamond/report.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kdiamond {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::strict); }

std::string rational_string(const Rational& r) { return r.get_str(); }

// Quotes a CSV field when it contains a separator or quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

long bits_of(const mpz_class& z) { return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)); }

}  // namespace

VerifyRow verify_point(const SussmanEngine& engine, int k, std::int64_t n, const mpz_class& exact,
                       long precision_cap) {
  VerifyRow row;
  row.k = k;
  row.n = n;
  row.exact = exact;
  row.truncation = engine.choose_truncation(n);
  std::optional<RademacherValue> value;
  for (Precision p = engine.suggested_precision(n, row.truncation); p.bits <= precision_cap; p = p.doubled()) {
    value = engine.evaluate(n, row.truncation, p);
    row.precision = p.bits;
    if (value->enclosure.unique_integer()) break;
  }
  if (value) {
    const auto z = value->enclosure.unique_integer();
    row.isolated = z.has_value();
    row.round_trip = z && *z == exact;
    row.series_mid = value->enclosure.mid_string(30);
    row.tail = value->tail.hi_string(6);
  }
  const Precision p{std::max(128L, bits_of(exact) + 64)};
  const BigInterval m = main_term(k, n, p).value;
  const BigInterval e = error_bound(k, n, p);
  row.main_term_mid = m.mid_string(30);
  row.error_bound = e.hi_string(10);
  row.within_envelope = decide_less_equal(abs(BigInterval(p, exact) - m), e) == Decision::kTrue;
  return row;
}

std::string coeff_json(int k, std::int64_t n, const mpz_class& value) {
  Json j;
  j["k"] = k;
  j["n"] = n;
  j["value"] = value.get_str();
  return dump(j);
}

std::string verify_json(const VerifyRow& row) {
  Json j;
  j["k"] = row.k;
  j["n"] = row.n;
  j["exact"] = row.exact.get_str();
  j["series_mid"] = row.series_mid;
  j["main_term_mid"] = row.main_term_mid;
  j["error_bound"] = row.error_bound;
  j["tail"] = row.tail;
  j["J"] = row.truncation;
  j["precision"] = row.precision;
  j["round_trip"] = row.round_trip;
  j["within_envelope"] = row.within_envelope;
  return dump(j);
}

std::string scan_json(const TuranScanResult& r) {
  Json j;
  j["k"] = r.k;
  j["d"] = r.d;
  j["N"] = r.minimal_shift ? Json(*r.minimal_shift) : Json(nullptr);
  j["failures"] = r.failures;
  j["horizon"] = r.horizon;
  j["status"] = r.status == ScanStatus::kStable ? "conjectural_beyond_horizon" : "unstable_at_horizon";
  return dump(j);
}

std::string audit_json(const AuditReport& r) {
  Json j;
  j["inequality"] = to_string(r.id);
  Json point = Json::object();
  if (r.point.k) point["k"] = *r.point.k;
  if (r.point.n) point["n"] = *r.point.n;
  if (r.point.s) point["s"] = r.point.s->label;
  if (r.point.N) point["N"] = *r.point.N;
  j["point"] = point;
  j["verdict"] = to_string(r.verdict);
  j["precision_bits"] = r.precision_used;
  Json values = Json::object();
  for (const auto& [name, v] : r.values) values[name] = v;
  j["values"] = values;
  if (!r.note.empty()) j["note"] = r.note;
  return dump(j);
}

std::string violations_json(int k, std::int64_t max_a, std::int64_t max_b,
                            const std::vector<MultiplicativeViolation>& v) {
  Json j;
  j["k"] = k;
  j["A"] = max_a;
  j["B"] = max_b;
  Json list = Json::array();
  for (const auto& x : v) list.push_back(Json::array({x.a, x.b}));
  j["violations"] = list;
  return dump(j);
}

std::string coeff_csv_header() { return "n,coefficient"; }
std::string coeff_csv(std::int64_t n, const mpz_class& value) { return std::to_string(n) + "," + value.get_str(); }

std::string verify_csv_header() {
  return "k,n,exact,series_mid,main_term_mid,error_bound,tail,J,precision,round_trip,within_envelope";
}

std::string verify_csv(const VerifyRow& row) {
  std::ostringstream o;
  o << row.k << ',' << row.n << ',' << row.exact.get_str() << ',' << row.series_mid << ',' << row.main_term_mid
    << ',' << row.error_bound << ',' << row.tail << ',' << row.truncation << ',' << row.precision << ','
    << (row.round_trip ? "true" : "false") << ',' << (row.within_envelope ? "true" : "false");
  return o.str();
}

std::string audit_csv_header() { return "inequality,k,n,s,N,verdict,precision_bits,note"; }

std::string audit_csv(const AuditReport& r) {
  std::ostringstream o;
  o << to_string(r.id) << ',' << (r.point.k ? std::to_string(*r.point.k) : "") << ','
    << (r.point.n ? std::to_string(*r.point.n) : "") << ',' << csv_field(r.point.s ? r.point.s->label : "") << ','
    << (r.point.N ? std::to_string(*r.point.N) : "") << ',' << to_string(r.verdict) << ',' << r.precision_used << ','
    << csv_field(r.note);
  return o.str();
}

std::string violations_csv_header() { return "a,b"; }
std::string violations_csv(const MultiplicativeViolation& v) { return std::to_string(v.a) + "," + std::to_string(v.b); }

std::string scan_table_csv(const std::vector<TuranScanResult>& results) {
  std::vector<int> ks;
  std::vector<int> ds;
  for (const auto& r : results) {
    if (std::find(ks.begin(), ks.end(), r.k) == ks.end()) ks.push_back(r.k);
    if (std::find(ds.begin(), ds.end(), r.d) == ds.end()) ds.push_back(r.d);
  }
  std::sort(ks.begin(), ks.end());
  std::sort(ds.begin(), ds.end());
  std::ostringstream o;
  o << "k";
  for (int d : ds) o << ",d=" << d;
  o << '\n';
  for (int k : ks) {
    o << k;
    for (int d : ds) {
      o << ',';
      for (const auto& r : results)
        if (r.k == k && r.d == d && r.minimal_shift) o << *r.minimal_shift;
    }
    o << '\n';
  }
  return o.str();
}

std::string audit_summary_table(const std::vector<AuditSummaryRow>& rows) {
  std::ostringstream o;
  o << std::left << std::setw(22) << "inequality" << std::right << std::setw(8) << "points" << std::setw(11)
    << "certified" << std::setw(9) << "refuted" << std::setw(11) << "undecided" << std::setw(14) << "out_of_range"
    << std::setw(10) << "max_bits" << '\n';
  for (const auto& r : rows) {
    o << std::left << std::setw(22) << to_string(r.id) << std::right << std::setw(8) << r.points << std::setw(11)
      << r.certified << std::setw(9) << r.refuted << std::setw(11) << r.undecided << std::setw(14) << r.out_of_range
      << std::setw(10) << r.max_precision << '\n';
  }
  return o.str();
}

const std::vector<std::int64_t>& reference_minimal_shifts(int k) {
  static const std::vector<std::int64_t> one{0, 4, 17, 41, 72, 116, 171, 238, 320, 415, 525, 650};
  static const std::vector<std::int64_t> two{0, 4, 17, 34, 62, 99, 147, 200, 272, 355, 445, 552};
  if (k == 1) return one;
  if (k == 2) return two;
  throw std::invalid_argument("reference shifts exist for k = 1, 2");
}

const std::vector<Rational>& reference_alpha(int k) {
  static const std::vector<Rational> one{
      make_rational(7, 3), make_rational(4, 3), make_rational(1, 1), make_rational(4, 3), make_rational(7, 3),
      make_rational(4, 1), make_rational(7, 3), make_rational(4, 3), make_rational(1, 1), make_rational(4, 3)};
  static const std::vector<Rational> two{
      make_rational(12, 5), make_rational(6, 5), make_rational(12, 5), make_rational(6, 5), make_rational(0, 1),
      make_rational(6, 5),  make_rational(12, 5), make_rational(6, 5), make_rational(12, 5), make_rational(6, 1)};
  if (k == 1) return one;
  if (k == 2) return two;
  throw std::invalid_argument("reference alpha exists for k = 1, 2");
}

const std::vector<Rational>& reference_beta(int k) {
  static const std::vector<Rational> one{
      make_rational(5, 72), make_rational(5, 18), make_rational(11, 24), make_rational(5, 18), make_rational(5, 72),
      make_rational(5, 6),  make_rational(5, 72), make_rational(5, 18), make_rational(11, 24), make_rational(5, 18)};
  static const std::vector<Rational> two{
      make_rational(0, 1), make_rational(3, 20), make_rational(0, 1), make_rational(3, 20), make_rational(1, 2),
      make_rational(3, 20), make_rational(0, 1), make_rational(3, 20), make_rational(0, 1), make_rational(3, 4)};
  if (k == 1) return one;
  if (k == 2) return two;
  throw std::invalid_argument("reference beta exists for k = 1, 2");
}

std::string seed_table_markdown(const std::vector<TuranScanResult>& scans) {
  std::ostringstream o;
  o << "## Minimal shifts N_{Delta_k}(d)\n\n";
  o << "| k | d | computed | reference | match |\n|---|---|---|---|---|\n";
  for (int k : {1, 2}) {
    const auto& ref = reference_minimal_shifts(k);
    for (int d = 2; d <= 13; ++d) {
      const TuranScanResult* found = nullptr;
      for (const auto& r : scans)
        if (r.k == k && r.d == d) found = &r;
      const std::string computed =
          !found ? "missing" : (found->minimal_shift ? std::to_string(*found->minimal_shift) : "unstable");
      const std::int64_t want = ref[static_cast<std::size_t>(d - 2)];
      const bool match = found && found->minimal_shift && *found->minimal_shift == want;
      o << "| " << k << " | " << d << " | " << computed << " | " << want << " | " << (match ? "yes" : "NO") << " |\n";
    }
  }
  if (!scans.empty()) o << "\nScan horizon " << scans.front().horizon << "; values beyond it are conjectural.\n";

  o << "\n## alpha_k(j) and beta_k(j)\n\n";
  o << "| k | j | alpha | reference | beta | reference | match |\n|---|---|---|---|---|---|---|\n";
  for (int k : {1, 2}) {
    const SussmanConstants c = constants(EtaQuotient::broken_diamond(k));
    const auto& ra = reference_alpha(k);
    const auto& rb = reference_beta(k);
    for (std::int64_t j = 1; j <= static_cast<std::int64_t>(ra.size()); ++j) {
      const auto i = static_cast<std::size_t>(j - 1);
      const Rational& a = c.c3_at(j);
      const Rational& b = c.beta_at(j);
      const bool match = a == ra[i] && b == rb[i];
      o << "| " << k << " | " << j << " | " << rational_string(a) << " | " << rational_string(ra[i]) << " | "
        << rational_string(b) << " | " << rational_string(rb[i]) << " | " << (match ? "yes" : "NO") << " |\n";
    }
  }
  return o.str();
}

}  // namespace kdiamond
