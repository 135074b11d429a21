#include "kdiamond/rademacher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kdiamond {

std::size_t SussmanConstants::index(std::int64_t j) const {
  if (j < 1) throw std::out_of_range("constants are defined for j >= 1");
  return static_cast<std::size_t>((j - 1) % period);
}

SussmanConstants constants(const EtaQuotient& q) {
  SussmanConstants c;
  c.c1 = make_rational(-q.delta_sum(), 2);
  c.period = q.period();
  for (std::int64_t j = 1; j <= c.period; ++j) {
    Rational c2sq = 1;
    Rational c3 = 0;
    std::optional<Rational> min_ratio;
    for (const auto& f : q.factors()) {
      const std::int64_t g = std::gcd(f.m, j);
      const Rational ratio = make_rational(g, f.m);
      Rational powered = 1;
      for (std::int64_t i = 0; i < (f.delta > 0 ? f.delta : -f.delta); ++i) powered *= ratio;
      c2sq *= f.delta > 0 ? powered : Rational(1) / powered;
      const Rational g2m = make_rational(g * g, f.m);
      c3 -= Rational(f.delta) * g2m;
      if (!min_ratio || g2m < *min_ratio) min_ratio = g2m;
    }
    c2sq.canonicalize();
    c3.canonicalize();
    Rational beta = *min_ratio - c3 / 24;
    beta.canonicalize();
    c.c2_squared.push_back(c2sq);
    c.c3.push_back(c3);
    c.beta.push_back(beta);
  }
  return c;
}

Applicability applicable(const EtaQuotient& q) {
  const SussmanConstants c = constants(q);
  if (c.c1 <= 0) return {false, std::nullopt, "c1 = " + c.c1.get_str() + " is not positive"};
  for (std::int64_t j = 1; j <= c.period; ++j) {
    if (c.beta_at(j) < 0) {
      return {false, j, "beta(" + std::to_string(j) + ") = " + c.beta_at(j).get_str() + " is negative"};
    }
  }
  return {true, std::nullopt, "c1 > 0 and beta(j) >= 0 on a full period"};
}

namespace {

void check_k(int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("the asymptotic formula is established for k = 1 or 2 only");
}

}  // namespace

BigInterval shifted_argument(const EtaQuotient& q, std::int64_t n, Precision p) {
  const std::int64_t d = 24 * n - q.n0();
  if (d <= 0) throw std::domain_error("shifted argument requires 24n > n0");
  return BigInterval::pi(p) * sqrt(BigInterval(p, static_cast<long>(d))) / BigInterval(p, 6L);
}

XShift x_shift(int k, std::int64_t n, Precision p) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const std::int64_t d = 24 * n - (2 * static_cast<std::int64_t>(k) + 2);
  if (d <= 0) throw std::domain_error("x_k(n) requires 24n > 2k + 2");
  return {k, n, BigInterval::pi(p) * sqrt(BigInterval(p, static_cast<long>(d))) / BigInterval(p, 6L)};
}

Rational alpha_one(int k) {
  return make_rational(5 * k + 2, 2 * k + 1);
}

MainTerm main_term(int k, std::int64_t n, Precision p) {
  check_k(k);
  const BigInterval x = x_shift(k, n, p).value;
  const BigInterval alpha(p, alpha_one(k));
  const BigInterval pi = BigInterval::pi(p);
  BigInterval m = alpha * pow(pi, 3) / (BigInterval(p, 18L) * sqr(x)) * bessel_i(2, sqrt(alpha) * x, p);
  return {k, n, m};
}

BigInterval error_bound(int k, std::int64_t n, Precision p) {
  check_k(k);
  const BigInterval x = x_shift(k, n, p).value;
  const BigInterval alpha(p, alpha_one(k));
  const BigInterval pi = BigInterval::pi(p);
  const BigInterval num = BigInterval(p, 8L) * pow(pi, 2) * sqrt(pi);
  const BigInterval den = pow(alpha, Rational(3, 4)) * pow(x, 3) * sqrt(x);
  return num / den * exp(sqrt(alpha) * x / BigInterval(p, 2L));
}

SussmanEngine::SussmanEngine(EtaQuotient q) : q_(std::move(q)), constants_(kdiamond::constants(q_)) {
  const Applicability a = applicable(q_);
  if (!a.applicable) throw InapplicableError("Sussman's hypotheses fail: " + a.reason, a.witness);
  Rational nu = constants_.c1 + 1;
  nu.canonicalize();
  const Rational twice_nu = nu * 2;
  if (twice_nu.get_den() != 1) throw std::domain_error("c1 must be a multiple of 1/2");
  order_ = BesselOrder::half_integer(static_cast<int>(twice_nu.get_num().get_si()));
  c2_max_squared_ = *std::max_element(constants_.c2_squared.begin(), constants_.c2_squared.end());
  c3_max_ = *std::max_element(constants_.c3.begin(), constants_.c3.end());
}

void SussmanEngine::prepare(std::int64_t max_j) {
  for (std::int64_t j = 1; j <= max_j; ++j) {
    if (!phase_cache_.contains(j)) phase_cache_.emplace(j, kloosterman_phases(q_, j));
  }
}

const std::vector<KloostermanTerm>& SussmanEngine::phases(std::int64_t j,
                                                          std::vector<KloostermanTerm>& scratch) const {
  if (auto it = phase_cache_.find(j); it != phase_cache_.end()) return it->second;
  scratch = kloosterman_phases(q_, j);
  return scratch;
}

void SussmanEngine::check_n(std::int64_t n) const {
  if (24 * n - q_.n0() <= 0) throw std::domain_error("series requires 24n > n0");
}

BigInterval SussmanEngine::term(std::int64_t n, std::int64_t j, Precision p) const {
  check_n(n);
  const Rational& c3 = constants_.c3_at(j);
  if (c3 <= 0) return BigInterval(p, 0L);
  const std::int64_t d = 24 * n - q_.n0();
  const BigInterval pi = BigInterval::pi(p);
  const BigInterval dd(p, static_cast<long>(d));
  const Rational half_nu = make_rational(order_.twice(), 4);
  const BigInterval c3i(p, c3);
  // 2 pi D^{-nu/2} c2 c3^{nu/2} / j * A_j(n) * I_nu(pi sqrt(c3 D) / (6 j))
  BigInterval factor = BigInterval(p, 2L) * pi * pow(dd, Rational(-half_nu)) * pow(c3i, half_nu) *
                       sqrt(BigInterval(p, constants_.c2_squared_at(j))) / BigInterval(p, static_cast<long>(j));
  std::vector<KloostermanTerm> scratch;
  const ComplexEnclosure a = a_hat_components(phases(j, scratch), j, n, p);
  if (!a.im.contains_zero()) throw PrecisionExhausted("imaginary part of A_j(n) does not enclose zero");
  const BigInterval arg = pi * sqrt(c3i * dd) / BigInterval(p, 6L * j);
  return factor * a.re * bessel_i(order_, arg, p);
}

BigInterval SussmanEngine::tail_bound(std::int64_t n, std::int64_t truncation, Precision p) const {
  check_n(n);
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  const std::int64_t d = 24 * n - q_.n0();
  const std::int64_t first = truncation + 1;
  const BigInterval pi = BigInterval::pi(p);
  const BigInterval dd(p, static_cast<long>(d));
  const Rational half_nu = make_rational(order_.twice(), 4);
  const BigInterval c3max(p, c3_max_);
  // |A_j| <= j and c2, c3 bounded by their maxima over a period:
  //   |tail| <= 2 pi D^{-nu/2} c2max c3max^{nu/2} * sum_{j >= N} I_nu(s / j),
  //   s = pi sqrt(c3max D) / 6,
  // and for decreasing f, sum_{j >= N} f(j) <= f(N) + int_N^inf f, which for
  // the I_nu series is at most (1 + N / (nu - 1)) I_nu(s / N) when nu > 1.
  Rational nu_minus_one = order_.value() - 1;
  if (nu_minus_one <= 0) throw std::domain_error("tail bound requires Bessel order > 1");
  const BigInterval s = pi * sqrt(c3max * dd) / BigInterval(p, 6L);
  const BigInterval inner = bessel_i(order_, s / BigInterval(p, static_cast<long>(first)), p);
  const BigInterval sum_bound =
      (BigInterval(p, 1L) + BigInterval(p, static_cast<long>(first)) / BigInterval(p, nu_minus_one)) * inner;
  return BigInterval(p, 2L) * pi * pow(dd, Rational(-half_nu)) * sqrt(BigInterval(p, c2_max_squared_)) *
         pow(c3max, half_nu) * sum_bound;
}

std::int64_t SussmanEngine::choose_truncation(std::int64_t n) const {
  const Precision p{64};
  const BigInterval quarter(p, Rational(1, 4));
  for (std::int64_t j = 1; j <= (std::int64_t{1} << 24); j *= 2) {
    if (certainly_less(tail_bound(n, j, p), quarter)) return j;
  }
  throw std::runtime_error("no truncation below 2^24 certifies a tail under 1/4");
}

Precision SussmanEngine::suggested_precision(std::int64_t n, std::int64_t truncation) const {
  check_n(n);
  const double d = static_cast<double>(24 * n - q_.n0());
  const double s = M_PI * std::sqrt(c3_max_.get_d() * d) / 6.0;
  // I_nu(s) <= e^s, so log2 |g(n)| is at most about s / ln 2 plus lower-order terms.
  const double bits = s / std::log(2.0) + std::log2(static_cast<double>(truncation) + 1.0) + 64.0;
  return Precision{std::max(64L, static_cast<long>(std::ceil(bits)))};
}

RademacherValue SussmanEngine::evaluate(std::int64_t n, std::int64_t truncation, Precision p) const {
  check_n(n);
  const std::int64_t big_j = truncation > 0 ? truncation : choose_truncation(n);
  BigInterval sum(p, 0L);
  for (std::int64_t j = 1; j <= big_j; ++j) sum += term(n, j, p);
  BigInterval tail = abs(tail_bound(n, big_j, p));
  BigInterval widen = BigInterval::hull(-tail, tail);
  RademacherValue out{sum + widen, sum, tail, big_j, p};
  return out;
}

mpz_class SussmanEngine::exact_value(std::int64_t n, long precision_cap) const {
  const std::int64_t big_j = choose_truncation(n);
  for (Precision p = suggested_precision(n, big_j); p.bits <= precision_cap; p = p.doubled()) {
    const RademacherValue v = evaluate(n, big_j, p);
    if (auto z = v.enclosure.unique_integer()) return *z;
  }
  throw PrecisionExhausted("series enclosure did not isolate an integer below the precision cap");
}

RademacherValue rademacher_eval(int k, std::int64_t n, std::int64_t truncation, Precision p) {
  if (n < 1) throw std::invalid_argument("rademacher_eval requires n >= 1");
  SussmanEngine engine(EtaQuotient::broken_diamond(k));
  return engine.evaluate(n, truncation, p);
}

std::int64_t choose_truncation(int k, std::int64_t n) {
  SussmanEngine engine(EtaQuotient::broken_diamond(k));
  return engine.choose_truncation(n);
}

}  // namespace kdiamond
