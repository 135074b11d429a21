#include "kdiamond/qseries.hpp"

#include "json.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kdiamond {

EtaQuotient::EtaQuotient(std::vector<EtaFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("eta-quotient needs at least one factor");
  std::set<std::int64_t> seen;
  for (const auto& f : factors_) {
    if (f.m <= 0) throw std::invalid_argument("eta-quotient factor m must be positive");
    if (f.delta == 0) throw std::invalid_argument("eta-quotient factor delta must be nonzero");
    if (!seen.insert(f.m).second) throw std::invalid_argument("eta-quotient factors must have distinct m");
  }
}

EtaQuotient EtaQuotient::broken_diamond(int k) {
  if (k < 1) throw std::invalid_argument("broken k-diamond requires k >= 1");
  const std::int64_t kk = k;
  return EtaQuotient({{1, -3}, {2, 1}, {2 * kk + 1, 1}, {4 * kk + 2, -1}});
}

EtaQuotient EtaQuotient::partitions() { return EtaQuotient({{1, -1}}); }

std::int64_t EtaQuotient::n0() const {
  std::int64_t s = 0;
  for (const auto& f : factors_) s -= f.m * f.delta;
  return s;
}

std::int64_t EtaQuotient::period() const {
  std::int64_t l = 1;
  for (const auto& f : factors_) l = std::lcm(l, f.m);
  return l;
}

std::int64_t EtaQuotient::delta_sum() const {
  std::int64_t s = 0;
  for (const auto& f : factors_) s += f.delta;
  return s;
}

std::string EtaQuotient::to_string() const {
  std::ostringstream os;
  os << "m=(";
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i].m;
  os << ") delta=(";
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i].delta;
  os << ")";
  return os.str();
}

ExactSeries multiply_truncated(const ExactSeries& a, const ExactSeries& b) {
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  ExactSeries out;
  out.coeffs.assign(n, mpz_class(0));
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class& ai = a.coeffs[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b.coeffs[j] == 0) continue;
      mpz_addmul(out.coeffs[i + j].get_mpz_t(), ai.get_mpz_t(), b.coeffs[j].get_mpz_t());
    }
  }
  return out;
}

namespace {

/// (q^m;q^m)_inf mod q^{N+1} by the pentagonal number theorem.
ExactSeries pentagonal(std::int64_t m, std::size_t order) {
  ExactSeries s;
  s.coeffs.assign(order + 1, mpz_class(0));
  const auto top = static_cast<std::int64_t>(order);
  for (std::int64_t j = 0;; ++j) {
    const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
    const std::int64_t e1 = m * (j * (3 * j - 1) / 2);
    const std::int64_t e2 = m * (j * (3 * j + 1) / 2);
    if (e1 > top) break;
    s.coeffs[static_cast<std::size_t>(e1)] += sign;
    if (j > 0 && e2 <= top) s.coeffs[static_cast<std::size_t>(e2)] += sign;
  }
  return s;
}

/// 1/(q^m;q^m)_inf by Euler's recurrence against the sparse pentagonal series.
ExactSeries inverse_pentagonal(std::int64_t m, std::size_t order) {
  const ExactSeries a = pentagonal(m, order);
  std::vector<std::size_t> support;
  for (std::size_t i = 1; i <= order; ++i)
    if (a.coeffs[i] != 0) support.push_back(i);
  ExactSeries b;
  b.coeffs.assign(order + 1, mpz_class(0));
  b.coeffs[0] = 1;
  for (std::size_t n = 1; n <= order; ++n) {
    mpz_class acc = 0;
    for (std::size_t i : support) {
      if (i > n) break;
      if (a.coeffs[i] > 0) {
        acc -= b.coeffs[n - i];
      } else {
        acc += b.coeffs[n - i];
      }
    }
    b.coeffs[n] = acc;
  }
  return b;
}

}  // namespace

ExactSeries euler_factor_series(std::int64_t m, std::int64_t delta, std::size_t order) {
  if (m <= 0) throw std::invalid_argument("euler factor m must be positive");
  ExactSeries one;
  one.coeffs.assign(order + 1, mpz_class(0));
  one.coeffs[0] = 1;
  if (delta == 0) return one;
  const ExactSeries base = delta > 0 ? pentagonal(m, order) : inverse_pentagonal(m, order);
  ExactSeries out = base;
  for (std::int64_t i = 1; i < (delta > 0 ? delta : -delta); ++i) out = multiply_truncated(out, base);
  return out;
}

ExactSeries eta_quotient_coeffs(const EtaQuotient& q, std::size_t order) {
  ExactSeries acc;
  acc.coeffs.assign(order + 1, mpz_class(0));
  acc.coeffs[0] = 1;
  for (const auto& f : q.factors()) acc = multiply_truncated(acc, euler_factor_series(f.m, f.delta, order));
  return acc;
}

ExactSeries delta_coeffs(int k, std::size_t order) {
  return eta_quotient_coeffs(EtaQuotient::broken_diamond(k), order);
}

std::string series_to_json(const ExactSeries& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : s.coeffs) arr.push_back(c.get_str());
  return arr.dump();
}

std::string series_to_csv(const ExactSeries& s) {
  std::ostringstream os;
  os << "n,coefficient\n";
  for (std::size_t n = 0; n < s.coeffs.size(); ++n) os << n << ',' << s.coeffs[n].get_str() << '\n';
  return os.str();
}

}  // namespace kdiamond
