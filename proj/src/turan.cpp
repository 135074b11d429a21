#include "kdiamond/turan.hpp"

#include <algorithm>
#include <stdexcept>

#include "kdiamond/parallel.hpp"
#include "kdiamond/qseries.hpp"

namespace kdiamond {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

IntPoly IntPoly::derivative() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IntPoly(std::move(d));
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return {};
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return *this;
  }
  std::vector<mpz_class> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) mpz_divexact(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(out));
}

namespace {

// c * a mod b with c a power of lc(b), computed over the integers. Sets
// `negated` when c < 0.
std::vector<mpz_class> pseudo_remainder(std::vector<mpz_class> a, const std::vector<mpz_class>& b, bool& negated) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lb = b.back();
  negated = false;
  while (a.size() >= b.size()) {
    if (sgn(lb) < 0) negated = !negated;
    const mpz_class la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i < db; ++i) a[shift + i] -= la * b[i];
    a.pop_back();
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
  }
  return a;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<IntPoly> sturm_sequence(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
  std::vector<IntPoly> chain{p.primitive()};
  IntPoly d = p.derivative().primitive();
  if (d.is_zero()) return chain;
  chain.push_back(std::move(d));
  while (true) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    // A negative scaling factor already supplies the sign flip of the step.
    bool factor_negative = false;
    std::vector<mpz_class> r = pseudo_remainder(a.coeffs(), b.coeffs(), factor_negative);
    if (r.empty()) break;
    if (!factor_negative)
      for (auto& c : r) c = -c;
    chain.push_back(IntPoly(std::move(r)).primitive());
  }
  return chain;
}

namespace {

int real_roots_from_chain(const std::vector<IntPoly>& chain) {
  std::vector<int> at_neg;
  std::vector<int> at_pos;
  for (const auto& q : chain) {
    const int s = sgn(q.leading());
    at_pos.push_back(s);
    at_neg.push_back(q.degree() % 2 == 0 ? s : -s);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

}  // namespace

int count_distinct_real_roots(const IntPoly& p) { return real_roots_from_chain(sturm_sequence(p)); }

bool is_hyperbolic(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no hyperbolicity");
  if (p.degree() <= 1) return true;
  const auto chain = sturm_sequence(p);
  // With P' != 0 the last chain member is gcd(P, P') up to a constant.
  const int distinct = p.degree() - chain.back().degree();
  return real_roots_from_chain(chain) == distinct;
}

JensenPoly jensen(std::span<const mpz_class> seq, int d, std::int64_t n) {
  if (d < 1) throw std::invalid_argument("Jensen polynomials need d >= 1");
  if (n < 0 || static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d) >= seq.size())
    throw std::out_of_range("sequence does not cover n..n+d");
  std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1);
  mpz_class binom = 1;
  for (int i = 0; i <= d; ++i) {
    c[static_cast<std::size_t>(i)] = binom * seq[static_cast<std::size_t>(n + i)];
    binom = binom * (d - i) / (i + 1);
  }
  return {d, n, IntPoly(std::move(c))};
}

namespace {

void require_window(std::span<const mpz_class> seq, std::int64_t n, std::int64_t ahead) {
  if (n < 1) throw std::out_of_range("Turan inequalities need n >= 1");
  if (static_cast<std::uint64_t>(n + ahead) >= seq.size()) throw std::out_of_range("sequence too short");
}

}  // namespace

bool log_concave_at(std::span<const mpz_class> seq, std::int64_t n) {
  require_window(seq, n, 1);
  const auto i = static_cast<std::size_t>(n);
  return seq[i] * seq[i] >= seq[i - 1] * seq[i + 1];
}

bool turan3_at(std::span<const mpz_class> seq, std::int64_t n) {
  require_window(seq, n, 2);
  const auto i = static_cast<std::size_t>(n);
  const mpz_class& a0 = seq[i - 1];
  const mpz_class& a1 = seq[i];
  const mpz_class& a2 = seq[i + 1];
  const mpz_class& a3 = seq[i + 2];
  const mpz_class lhs = 4 * (a1 * a1 - a0 * a2) * (a2 * a2 - a1 * a3);
  const mpz_class mixed = a1 * a2 - a0 * a3;
  return lhs >= mixed * mixed;
}

TuranScanResult scan_minimal_shift(std::span<const mpz_class> seq, int d, std::int64_t horizon, std::int64_t margin,
                                   int k) {
  if (d < 1) throw std::invalid_argument("scan needs d >= 1");
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  if (static_cast<std::uint64_t>(horizon + d) >= seq.size()) throw std::out_of_range("sequence does not cover 0..H+d");
  if (margin < 0) margin = horizon / 4;

  const auto count = static_cast<std::size_t>(horizon) + 1;
  std::vector<char> ok(count, 0);
  parallel_for(count, [&](std::size_t n) {
    ok[n] = is_hyperbolic(jensen(seq, d, static_cast<std::int64_t>(n)).poly) ? 1 : 0;
  });

  TuranScanResult r;
  r.k = k;
  r.d = d;
  r.horizon = horizon;
  std::int64_t last_failure = -1;
  for (std::size_t n = 0; n < count; ++n) {
    if (!ok[n]) {
      r.failures.push_back(static_cast<std::int64_t>(n));
      last_failure = static_cast<std::int64_t>(n);
    }
  }
  if (last_failure >= 0 && last_failure > horizon - margin) {
    r.status = ScanStatus::kUnstableAtHorizon;
  } else {
    r.minimal_shift = last_failure + 1;
  }
  return r;
}

std::vector<MultiplicativeViolation> multiplicative_check(std::span<const mpz_class> seq, std::int64_t max_a,
                                                          std::int64_t max_b) {
  if (max_a < 0 || max_b < 0) throw std::invalid_argument("negative bounds");
  if (static_cast<std::uint64_t>(max_a + max_b) >= seq.size()) throw std::out_of_range("sequence does not cover A+B");
  std::vector<MultiplicativeViolation> out;
  mpz_class prod;
  for (std::int64_t a = 1; a <= max_a; ++a) {
    for (std::int64_t b = 1; b <= max_b; ++b) {
      prod = seq[static_cast<std::size_t>(a)] * seq[static_cast<std::size_t>(b)];
      if (prod < seq[static_cast<std::size_t>(a + b)]) out.push_back({a, b});
    }
  }
  return out;
}

std::vector<MultiplicativeViolation> multiplicative_check(int k, std::int64_t max_a, std::int64_t max_b) {
  const auto series = delta_coeffs(k, static_cast<std::size_t>(max_a + max_b));
  return multiplicative_check(series.view(), max_a, max_b);
}

}  // namespace kdiamond
