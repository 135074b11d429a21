#include "doctest.h"
#include "kdiamond/interval.hpp"

#include <random>

using namespace kdiamond;

TEST_CASE("arithmetic encloses exact rationals") {
  const Precision p{64};
  const BigInterval third = BigInterval(p, 1L) / BigInterval(p, 3L);
  CHECK(third.contains(mpq_class(1, 3)));
  CHECK_FALSE(third.contains(mpq_class(1, 4)));
  const BigInterval sum = third + third + third;
  CHECK(sum.contains(mpz_class(1)));
  CHECK(sum.width() < 1e-17);

  const BigInterval neg = BigInterval(p, -2L) * BigInterval::hull(BigInterval(p, -1L), BigInterval(p, 3L));
  CHECK(neg.lo_double() == -6.0);
  CHECK(neg.hi_double() == 2.0);
}

TEST_CASE("division by an interval straddling zero is rejected") {
  const Precision p{64};
  const BigInterval z = BigInterval::hull(BigInterval(p, -1L), BigInterval(p, 1L));
  CHECK_THROWS_AS(BigInterval(p, 1L) / z, std::domain_error);
}

TEST_CASE("cos_pi exact points and symmetry") {
  const Precision p{80};
  CHECK(BigInterval::cos_pi(p, mpq_class(0)).contains(mpz_class(1)));
  CHECK(BigInterval::cos_pi(p, mpq_class(7)).contains(mpz_class(-1)));
  CHECK(BigInterval::cos_pi(p, mpq_class(5, 2)).contains(mpz_class(0)));
  CHECK(BigInterval::cos_pi(p, mpq_class(1, 3)).contains(mpq_class(1, 2)));
  CHECK(BigInterval::cos_pi(p, mpq_class(-1, 3)).contains(mpq_class(1, 2)));
  CHECK(BigInterval::sin_pi(p, mpq_class(1, 6)).contains(mpq_class(1, 2)));
  CHECK(BigInterval::sin_pi(p, mpq_class(-13, 6)).contains(mpq_class(-1, 2)));
  CHECK(BigInterval::cos_pi(p, mpq_class(2, 3)).width() < 1e-20);
}

TEST_CASE("unique integer detection") {
  const Precision p{64};
  auto iv = BigInterval::hull(BigInterval(p, mpq_class(39, 4)), BigInterval(p, mpq_class(41, 4)));
  REQUIRE(iv.unique_integer().has_value());
  CHECK(*iv.unique_integer() == 10);
  auto wide = BigInterval::hull(BigInterval(p, mpq_class(35, 4)), BigInterval(p, mpq_class(41, 4)));
  CHECK_FALSE(wide.unique_integer().has_value());
  auto none = BigInterval::hull(BigInterval(p, mpq_class(41, 4)), BigInterval(p, mpq_class(43, 4)));
  CHECK_FALSE(none.unique_integer().has_value());
  CHECK(iv.round_mid() == 10);
}

TEST_CASE("elementary functions enclose their values at two precisions") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(1, 100000);
  for (int trial = 0; trial < 200; ++trial) {
    mpq_class x(num(rng), num(rng));
    x.canonicalize();
    const BigInterval lo_prec = exp(sqrt(BigInterval(Precision{60}, x)));
    const BigInterval hi_prec = exp(sqrt(BigInterval(Precision{120}, x)));
    // The higher-precision enclosure must overlap (and here lie inside) the coarser one.
    CHECK(hi_prec.subset_of(lo_prec));
    CHECK(hi_prec.width() <= lo_prec.width());
    const BigInterval back = log(exp(BigInterval(Precision{100}, x)));
    CHECK(back.contains(x));
  }
}

TEST_CASE("rational powers") {
  const Precision p{100};
  const BigInterval eight(p, 8L);
  CHECK(pow(eight, mpq_class(2, 3)).contains(mpz_class(4)));
  CHECK(pow(eight, -1).contains(mpq_class(1, 8)));
  CHECK(pow(BigInterval(p, 3L), 5).contains(mpz_class(243)));
}

TEST_CASE("comparison decisions") {
  const Precision p{64};
  CHECK(decide_less(BigInterval(p, 1L), BigInterval(p, 2L)) == Decision::kTrue);
  CHECK(decide_less(BigInterval(p, 2L), BigInterval(p, 2L)) == Decision::kFalse);
  CHECK(decide_less_equal(BigInterval(p, 2L), BigInterval(p, 2L)) == Decision::kTrue);
  const BigInterval fuzzy = BigInterval::hull(BigInterval(p, 1L), BigInterval(p, 3L));
  CHECK(decide_less(fuzzy, BigInterval(p, 2L)) == Decision::kUndecided);
}

TEST_CASE("decimal output rounds outward") {
  const BigInterval third = BigInterval(Precision{64}, 1L) / BigInterval(Precision{64}, 3L);
  CHECK(third.lo_string(5) == "3.3333e-01");
  CHECK(third.hi_string(5) == "3.3334e-01");
}
