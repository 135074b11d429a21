#include "doctest.h"
#include "kdiamond/qseries.hpp"
#include "kdiamond/turan.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <vector>

using namespace kdiamond;

namespace {

IntPoly poly(std::initializer_list<long> c) {
  std::vector<mpz_class> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

std::vector<mpz_class> seq_of(std::initializer_list<long> c) {
  std::vector<mpz_class> v;
  for (long x : c) v.emplace_back(x);
  return v;
}

const ExactSeries& delta1() {
  static const ExactSeries s = delta_coeffs(1, 2100);
  return s;
}
const ExactSeries& delta2() {
  static const ExactSeries s = delta_coeffs(2, 2100);
  return s;
}

// Numeric oracle: eigenvalues of the companion matrix. Returns 1 for clearly
// real-rooted, 0 for clearly not, -1 when the floating-point answer is unclear.
int numeric_hyperbolic(const IntPoly& p) {
  const int d = p.degree();
  if (d <= 1) return 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  const double lead = p.leading().get_d();
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -p.coeffs()[static_cast<std::size_t>(i)].get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  const auto& ev = es.eigenvalues();
  // Multiple roots split into clusters of size ~eps^(1/m); no verdict there.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(ev[i] - ev[j]) < 1e-3 * (1 + std::abs(ev[i]))) return -1;
  double max_imag = 0;
  for (int i = 0; i < d; ++i) max_imag = std::max(max_imag, std::abs(ev[i].imag()));
  if (max_imag < 1e-9) return 1;
  if (max_imag > 1e-6) return 0;
  return -1;
}

}  // namespace

TEST_CASE("IntPoly trims and differentiates") {
  CHECK(poly({1, 2, 0, 0}).degree() == 1);
  CHECK(poly({0, 0}).is_zero());
  CHECK(poly({5, 3, 4}).derivative() == poly({3, 8}));
  CHECK(poly({6, -4, 10}).primitive() == poly({3, -2, 5}));
}

TEST_CASE("jensen builds binomial windows") {
  const auto j = jensen(delta1().view(), 2, 1);
  CHECK(j.poly == poly({3, 16, 18}));
  CHECK(j.d == 2);
  CHECK(j.n == 1);
  const auto ones = seq_of({1, 1, 1});
  CHECK(jensen(ones, 2, 0).poly == poly({1, 2, 1}));
  CHECK_THROWS_AS(jensen(ones, 2, 1), std::out_of_range);
  CHECK_THROWS_AS(jensen(ones, 3, 0), std::out_of_range);

  const auto j5 = jensen(delta1().view(), 5, 40);
  CHECK(j5.poly.coeffs().size() == 6);
  CHECK(j5.poly.coeffs().front() == delta1()[40]);
  CHECK(j5.poly.coeffs().back() == delta1()[45]);
  for (const auto& c : j5.poly.coeffs()) CHECK(sgn(c) > 0);
}

TEST_CASE("is_hyperbolic on small cases") {
  CHECK(is_hyperbolic(poly({1, 2, 1})));
  CHECK_FALSE(is_hyperbolic(poly({1, 1, 1})));
  CHECK(is_hyperbolic(poly({7})));
  CHECK(is_hyperbolic(poly({-3, 2})));
  CHECK_THROWS_AS(is_hyperbolic(IntPoly{}), std::invalid_argument);
  // (x-1)^3 (x+2)^2, and the same times x^2 + 1
  CHECK(is_hyperbolic(poly({-4, 8, -1, -5, 1, 1})));
  CHECK(count_distinct_real_roots(poly({-4, 8, -1, -5, 1, 1})) == 2);
  CHECK_FALSE(is_hyperbolic(poly({-4, 8, -5, 3, 0, -4, 1, 1})));
  CHECK(count_distinct_real_roots(poly({-4, 8, -5, 3, 0, -4, 1, 1})) == 2);
  // x^4 + 1 has no real roots, x^3 - x three
  CHECK(count_distinct_real_roots(poly({1, 0, 0, 0, 1})) == 0);
  CHECK(count_distinct_real_roots(poly({0, -1, 0, 1})) == 3);
  // negative leading coefficients
  CHECK(is_hyperbolic(poly({-1, 0, -1})) == false);
  CHECK(is_hyperbolic(poly({1, 0, -1})) == true);
  CHECK(is_hyperbolic(poly({0, 1, 0, -1})) == true);
}

TEST_CASE("any d = 1 window is hyperbolic") {
  for (std::int64_t n = 0; n < 100; ++n) CHECK(is_hyperbolic(jensen(delta2().view(), 1, n).poly));
}

TEST_CASE("Sturm decision agrees with companion eigenvalues") {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<int> deg(1, 8);
  std::uniform_int_distribution<int> coef(-20, 20);
  std::uniform_int_distribution<int> root(-6, 6);
  std::uniform_int_distribution<int> coin(0, 2);
  int compared = 0;
  int hyperbolic_seen = 0;
  int rooted_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    IntPoly p;
    bool known = false;
    bool known_value = false;
    if (coin(rng) == 0) {
      std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = coef(rng);
      if (sgn(c.back()) == 0) c.back() = 1;
      p = IntPoly(std::move(c));
    } else {
      // product of linear factors, optionally times an irreducible quadratic
      std::vector<mpz_class> c{1};
      const int d = deg(rng);
      for (int i = 0; i < d; ++i) {
        const long r = root(rng);
        const long a = 1 + coin(rng);
        std::vector<mpz_class> next(c.size() + 1, 0);
        for (std::size_t t = 0; t < c.size(); ++t) {
          next[t] -= c[t] * r;
          next[t + 1] += c[t] * a;
        }
        c = next;
      }
      known = true;
      known_value = true;
      if (coin(rng) == 0 && d <= 6) {
        std::vector<mpz_class> next(c.size() + 2, 0);
        for (std::size_t t = 0; t < c.size(); ++t) {
          next[t] += c[t] * 3;
          next[t + 1] += c[t];
          next[t + 2] += c[t];
        }
        c = next;
        known_value = false;
      }
      p = IntPoly(std::move(c));
    }
    const bool exact = is_hyperbolic(p);
    if (known) {
      CHECK(exact == known_value);
      ++rooted_checked;
    }
    const int numeric = numeric_hyperbolic(p);
    if (numeric >= 0) {
      CHECK(exact == (numeric == 1));
      ++compared;
    }
    hyperbolic_seen += exact ? 1 : 0;
  }
  CHECK(compared > 500);
  CHECK(hyperbolic_seen > 200);
  CHECK(rooted_checked > 500);
}

TEST_CASE("log_concave_at and turan3_at") {
  const auto& d1 = delta1();
  CHECK(log_concave_at(d1.view(), 1));
  CHECK(log_concave_at(d1.view(), 2));
  CHECK_THROWS_AS(log_concave_at(d1.view(), 0), std::out_of_range);
  const auto ones = seq_of({1, 1, 1, 1, 1});
  for (int n = 1; n <= 2; ++n) CHECK(turan3_at(ones, n));
  CHECK_THROWS_AS(turan3_at(ones, 3), std::out_of_range);

  // order 3 Turan at n is exactly real-rootedness of J^{3,n-1}
  CHECK_FALSE(is_hyperbolic(jensen(d1.view(), 3, 3).poly));
  CHECK(is_hyperbolic(jensen(d1.view(), 3, 4).poly));
  CHECK_FALSE(turan3_at(d1.view(), 4));
  CHECK(turan3_at(d1.view(), 5));
}

TEST_CASE("equivalences with Jensen hyperbolicity") {
  for (const auto* s : {&delta1(), &delta2()}) {
    for (std::int64_t n = 1; n <= 500; ++n) {
      CHECK(is_hyperbolic(jensen(s->view(), 2, n - 1).poly) == log_concave_at(s->view(), n));
      CHECK(is_hyperbolic(jensen(s->view(), 3, n - 1).poly) == turan3_at(s->view(), n));
    }
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> val(1, 1000);
  std::vector<mpz_class> r(400);
  for (auto& x : r) x = val(rng);
  for (std::int64_t n = 1; n + 2 < 400; ++n) {
    CHECK(is_hyperbolic(jensen(r, 2, n - 1).poly) == log_concave_at(r, n));
    CHECK(is_hyperbolic(jensen(r, 3, n - 1).poly) == turan3_at(r, n));
  }
}

TEST_CASE("log-concavity of Delta_k at scale") {
  const auto d1 = delta_coeffs(1, 5001);
  const auto d2 = delta_coeffs(2, 5001);
  bool all = true;
  for (std::int64_t n = 1; n <= 5000; ++n) all = all && log_concave_at(d1.view(), n) && log_concave_at(d2.view(), n);
  CHECK(all);
  for (int k = 3; k <= 5; ++k) {
    const auto s = delta_coeffs(k, 2001);
    bool ok = true;
    for (std::int64_t n = 1; n <= 2000; ++n) ok = ok && log_concave_at(s.view(), n);
    CHECK(ok);
  }
}

TEST_CASE("partition function controls") {
  const auto p = eta_quotient_coeffs(EtaQuotient::partitions(), 600);
  CHECK_FALSE(log_concave_at(p.view(), 25));
  for (std::int64_t n = 26; n <= 500; ++n) CHECK(log_concave_at(p.view(), n));
  CHECK_FALSE(turan3_at(p.view(), 94));
  for (std::int64_t n = 95; n <= 500; ++n) CHECK(turan3_at(p.view(), n));
  const auto scan = scan_minimal_shift(p.view(), 3, 500);
  REQUIRE(scan.minimal_shift);
  CHECK(*scan.minimal_shift == 94);
}

TEST_CASE("scan_minimal_shift on small windows") {
  const auto r1 = scan_minimal_shift(delta1().view(), 3, 200);
  CHECK(r1.status == ScanStatus::kStable);
  REQUIRE(r1.minimal_shift);
  CHECK(*r1.minimal_shift == 4);
  CHECK(r1.failures.back() == 3);
  const auto r2 = scan_minimal_shift(delta2().view(), 2, 300);
  REQUIRE(r2.minimal_shift);
  CHECK(*r2.minimal_shift == 0);
  CHECK(r2.failures.empty());
  // a failure right below the horizon is not a threshold
  const auto tight = scan_minimal_shift(delta1().view(), 6, 75);
  CHECK(tight.status == ScanStatus::kUnstableAtHorizon);
  CHECK_FALSE(tight.minimal_shift);
  const auto ones = seq_of({1, 1, 1, 1, 1, 1});
  CHECK(*scan_minimal_shift(ones, 2, 3).minimal_shift == 0);
}

TEST_CASE("scan invariants") {
  for (int d : {4, 5}) {
    const auto r = scan_minimal_shift(delta2().view(), d, 400);
    REQUIRE(r.minimal_shift);
    const auto N = *r.minimal_shift;
    for (std::int64_t n = N; n <= 400; ++n) CHECK(is_hyperbolic(jensen(delta2().view(), d, n).poly));
    if (N >= 1) CHECK_FALSE(is_hyperbolic(jensen(delta2().view(), d, N - 1).poly));
    for (auto f : r.failures) CHECK(f < N);
  }
}

TEST_CASE("multiplicative property") {
  CHECK(multiplicative_check(1, 200, 200).empty());
  CHECK(multiplicative_check(2, 200, 200).empty());
  CHECK(delta1()[1] * delta1()[1] >= delta1()[2]);
  const auto bad = seq_of({1, 1, 5, 1});
  const auto v = multiplicative_check(bad, 1, 1);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == MultiplicativeViolation{1, 1});
}
