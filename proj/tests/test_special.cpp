#include "doctest.h"
#include "kdiamond/special.hpp"

#include <numeric>
#include <random>

using namespace kdiamond;

namespace {

// Dedekind reciprocity: s(h,j) + s(j,h) = -1/4 + (h/j + j/h + 1/(hj)) / 12.
Rational reciprocity_rhs(long h, long j) {
  return make_rational(-1, 4) + (make_rational(h, j) + make_rational(j, h) + make_rational(1, h * j)) / 12;
}

// Direct evaluation of the sawtooth definition with exact rationals.
Rational dedekind_oracle(long h, long j) {
  auto saw = [](const Rational& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (x == Rational(fl)) return Rational(0);
    Rational v = x - Rational(fl) - Rational(1, 2);
    v.canonicalize();
    return v;
  };
  Rational s = 0;
  for (long r = 1; r < j; ++r) s += saw(make_rational(r, j)) * saw(make_rational(h * r, j));
  s.canonicalize();
  return s;
}

}  // namespace

TEST_CASE("dedekind_sum examples") {
  CHECK(dedekind_sum(17, 1) == 0);
  CHECK(dedekind_sum(-4, 1) == 0);
  CHECK(dedekind_sum(1, 2) == 0);
  CHECK(dedekind_sum(1, 3) == Rational(1, 18));
  CHECK(dedekind_sum(2, 3) == Rational(-1, 18));
  CHECK_THROWS_AS(dedekind_sum(1, 0), std::invalid_argument);
}

TEST_CASE("dedekind_sum matches the sawtooth definition") {
  for (long j = 1; j <= 25; ++j)
    for (long h = -30; h <= 30; ++h) CHECK(dedekind_sum(h, j) == dedekind_oracle(h, j));
}

TEST_CASE("dedekind reciprocity for coprime h, j <= 30") {
  for (long h = 1; h <= 30; ++h) {
    for (long j = 1; j <= 30; ++j) {
      if (std::gcd(h, j) != 1) continue;
      CHECK(dedekind_sum(h, j) + dedekind_sum(j, h) == reciprocity_rhs(h, j));
    }
  }
}

TEST_CASE("a_hat at j = 1 is one") {
  const Precision p{96};
  for (const auto& q : {EtaQuotient::broken_diamond(1), EtaQuotient::broken_diamond(2), EtaQuotient::partitions()}) {
    for (long n : {0L, 1L, 17L, 1000L}) CHECK(a_hat(1, n, q, p).contains(mpz_class(1)));
  }
}

TEST_CASE("a_hat is real and bounded by j") {
  const Precision p{96};
  for (const auto& q : {EtaQuotient::broken_diamond(1), EtaQuotient::broken_diamond(2)}) {
    for (std::int64_t j = 1; j <= 50; ++j) {
      const auto phases = kloosterman_phases(q, j);
      for (std::int64_t n = 0; n <= 50; ++n) {
        const auto c = a_hat_components(phases, j, n, p);
        CHECK(c.im.contains_zero());
        CHECK(abs(c.re).hi_double() <= static_cast<double>(j) + 1e-20);
      }
    }
  }
  const auto a20 = a_hat(2, 0, EtaQuotient::broken_diamond(1), p);
  CHECK(abs(a20).hi_double() <= 2.0);
}

TEST_CASE("a_hat conjugate pairing at j = 5, n = 3 for Delta_2") {
  const Precision p{96};
  const auto q = EtaQuotient::broken_diamond(2);
  const auto phases = kloosterman_phases(q, 5);
  // The phase of h and j - h are negatives mod 2 since s(-h, j) = -s(h, j).
  for (const auto& t : phases) {
    for (const auto& u : phases) {
      if (t.h + u.h == 5) CHECK(t.dedekind_phase == -u.dedekind_phase);
    }
  }
  BigInterval paired(p, 0L);
  for (const auto& t : phases) {
    if (2 * t.h < 5) {
      Rational theta = t.dedekind_phase - make_rational(2 * t.h * 3, 5);
      paired += BigInterval(p, 2L) * BigInterval::cos_pi(p, theta);
    }
  }
  const auto c = a_hat_components(5, 3, q, p);
  CHECK(c.im.contains_zero());
  CHECK(c.re.lo_double() <= paired.hi_double());
  CHECK(paired.lo_double() <= c.re.hi_double());
  CHECK(c.re.width() < 1e-20);
}

TEST_CASE("bessel_i examples") {
  const Precision p{128};
  CHECK(bessel_i(2, BigInterval(p, 0L), p).contains(mpz_class(0)));
  CHECK(bessel_i(0, BigInterval(p, 0L), p).contains(mpz_class(1)));

  // I_1(1) <= sqrt(2/pi) e
  const BigInterval i1 = bessel_i(1, BigInterval(p, 1L), p);
  const BigInterval pi = BigInterval::pi(p);
  const BigInterval bound = sqrt(BigInterval(p, 2L) / pi) * exp(BigInterval(p, 1L));
  CHECK(certainly_less(i1, bound));
  CHECK(i1.lo_double() == doctest::Approx(0.565159103992485).epsilon(1e-14));

  // I_2(10) against a 200-term exact rational partial sum.
  mpq_class partial = 0;
  mpq_class term(25, 2);  // (10/2)^2 / (0! 2!)
  for (int r = 0; r < 200; ++r) {
    partial += term;
    term *= make_rational(25, (r + 1) * (r + 3));
    term.canonicalize();
  }
  const BigInterval i2 = bessel_i(2, BigInterval(p, 10L), p);
  CHECK(i2.contains(partial));
  CHECK(i2.width() < 1e-25);
  CHECK(i2.mid_string(30) == "2.28151896772600354060160476007e+03");
}

TEST_CASE("half-integer order matches the closed form") {
  // I_{3/2}(x) = sqrt(2 / (pi x)) (cosh x - sinh x / x)
  const Precision p{128};
  for (long xv : {1L, 7L, 40L}) {
    const BigInterval x(p, xv);
    const BigInterval pi = BigInterval::pi(p);
    const BigInterval e = exp(x);
    const BigInterval einv = BigInterval(p, 1L) / e;
    const BigInterval ch = (e + einv) / BigInterval(p, 2L);
    const BigInterval sh = (e - einv) / BigInterval(p, 2L);
    const BigInterval closed = sqrt(BigInterval(p, 2L) / (pi * x)) * (ch - sh / x);
    const BigInterval series = bessel_i(BesselOrder::half_integer(3), x, p);
    CHECK(series.lo_double() <= closed.hi_double());
    CHECK(closed.lo_double() <= series.hi_double());
    CHECK(series.width() / series.mid_double() < 1e-30);
  }
}

TEST_CASE("I_2 increases along a grid") {
  const Precision p{96};
  BigInterval prev = bessel_i(2, BigInterval(p, 0L), p);
  for (int i = 1; i <= 120; ++i) {
    const BigInterval cur = bessel_i(2, BigInterval(p, make_rational(i * 5, 2)), p);
    CHECK(certainly_less(prev, cur));
    prev = cur;
  }
}

TEST_CASE("enclosures nest when precision doubles") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(0, 4000);
  for (int trial = 0; trial < 60; ++trial) {
    const mpq_class s = make_rational(num(rng), 10);
    const int nu = static_cast<int>(trial % 4);
    const BigInterval coarse = bessel_i(nu, BigInterval(Precision{64}, s), Precision{64});
    const BigInterval fine = bessel_i(nu, BigInterval(Precision{128}, s), Precision{128});
    CHECK(fine.lo_double() >= coarse.lo_double());
    CHECK(fine.hi_double() <= coarse.hi_double());
    CHECK(coarse.lo_double() <= fine.hi_double());
  }
}

TEST_CASE("bessel_i rejects negative arguments") {
  const Precision p{64};
  CHECK_THROWS_AS(bessel_i(2, BigInterval(p, -1L), p), std::domain_error);
}

TEST_CASE("pi_interval") {
  const BigInterval p10 = pi_interval(Precision{10});
  CHECK(p10.contains(mpq_class(314159, 100000)));
  CHECK(p10.width() <= 1.0 / 256.0);
  const BigInterval p53 = pi_interval(Precision{53});
  CHECK(p53.lo_double() == 3.141592653589793);
  CHECK(p53.width() <= 4.0 / 9007199254740992.0);
  const BigInterval p200 = pi_interval(Precision{200});
  const mpq_class published("3141592653589793238462643383279502884197169399375105820974944/1000000000000000000000000000000000000000000000000000000000000");
  const mpq_class ulp60("1/10000000000000000000000000000000000000000000000000000000000");  // 1e-59
  CHECK(p200.lo_double() <= 3.1415926535897936);
  CHECK(certainly_less(BigInterval(Precision{256}, mpq_class(published - ulp60)), p200));
  CHECK(certainly_less(p200, BigInterval(Precision{256}, mpq_class(published + ulp60))));
  CHECK_THROWS_AS(pi_interval(Precision{1}), std::invalid_argument);
}
