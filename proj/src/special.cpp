#include "kdiamond/special.hpp"

#include <mpfr.h>

#include <numeric>
#include <stdexcept>

namespace kdiamond {

namespace {

mpz_class to_mpz(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class out(static_cast<unsigned long>(u >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(u & 0xffffffffffffffffULL);
  return neg ? mpz_class(-out) : out;
}

}  // namespace

Rational dedekind_sum(std::int64_t h, std::int64_t j) {
  if (j < 1) throw std::invalid_argument("dedekind_sum requires j >= 1");
  if (j > (std::int64_t{1} << 40)) throw std::invalid_argument("dedekind_sum: j too large for direct summation");
  const __int128 jj = j;
  const __int128 hm = ((static_cast<__int128>(h) % jj) + jj) % jj;
  // s(h, j) = (1 / 4j^2) * sum (2r - j)(2 (hr mod j) - j) over r with j not dividing hr.
  // |sum| <= j^3, which fits in 128 bits for j <= 2^40.
  __int128 acc = 0;
  for (__int128 r = 1; r < jj; ++r) {
    const __int128 x = (hm * r) % jj;
    if (x == 0) continue;
    acc += (2 * r - jj) * (2 * x - jj);
  }
  Rational out(to_mpz(acc), to_mpz(4 * jj * jj));
  out.canonicalize();
  return out;
}

std::vector<KloostermanTerm> kloosterman_phases(const EtaQuotient& q, std::int64_t j) {
  if (j < 1) throw std::invalid_argument("kloosterman_phases requires j >= 1");
  std::vector<KloostermanTerm> out;
  for (std::int64_t h = 0; h < j; ++h) {
    if (std::gcd(h, j) != 1) continue;
    Rational phase = 0;
    for (const auto& f : q.factors()) {
      const std::int64_t g = std::gcd(f.m, j);
      phase -= Rational(f.delta) * dedekind_sum(f.m * h / g, j / g);
    }
    out.push_back({h, phase});
  }
  return out;
}

ComplexEnclosure a_hat_components(const std::vector<KloostermanTerm>& phases, std::int64_t j,
                                  std::int64_t n, Precision p) {
  if (j < 1) throw std::invalid_argument("a_hat requires j >= 1");
  Precision wp{p.bits + 16};
  ComplexEnclosure out{BigInterval(wp), BigInterval(wp)};
  const std::int64_t nr = ((n % j) + j) % j;  // A_j(n) has period j in n
  for (const auto& term : phases) {
    const Rational theta = term.dedekind_phase - make_rational(2 * ((term.h * nr) % j), j);
    out.re += BigInterval::cos_pi(wp, theta);
    out.im += BigInterval::sin_pi(wp, theta);
  }
  return out;
}

ComplexEnclosure a_hat_components(std::int64_t j, std::int64_t n, const EtaQuotient& q, Precision p) {
  return a_hat_components(kloosterman_phases(q, j), j, n, p);
}

BigInterval a_hat(std::int64_t j, std::int64_t n, const EtaQuotient& q, Precision p) {
  auto c = a_hat_components(j, n, q, p);
  if (!c.im.contains_zero()) {
    throw PrecisionExhausted("imaginary part of A_j(n) does not enclose zero");
  }
  return c.re;
}

namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t p) { mpfr_init2(v_, p); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v_); }
  operator mpfr_ptr() { return v_; }
  mpfr_ptr operator->() { return v_; }

 private:
  mpfr_t v_;
};

mpfr_rnd_t opposite(mpfr_rnd_t r) { return r == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD; }

/// One-sided sum of the I_nu series at a nonnegative point y. With rnd = RNDD
/// the result is a lower bound; with RNDU an upper bound including the tail.
void bessel_endpoint(mpfr_ptr result, mpfr_srcptr y, int twice_nu, mpfr_rnd_t rnd, long target_bits) {
  const mpfr_prec_t wp = mpfr_get_prec(result);
  if (mpfr_zero_p(y)) {
    mpfr_set_si(result, twice_nu == 0 ? 1 : 0, rnd);
    return;
  }
  Mpfr half(wp), q2(wp), term(wp), sum(wp), rho(wp), tmp(wp);
  mpfr_div_2ui(half, y, 1, rnd);
  mpfr_sqr(q2, half, rnd);

  // Leading term (y/2)^nu / Gamma(nu + 1).
  const int m = twice_nu / 2;
  mpfr_pow_ui(term, half, static_cast<unsigned long>(m), rnd);
  if (twice_nu % 2 == 0) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    mpfr_div_z(term, term, fact.get_mpz_t(), rnd);
  } else {
    // Gamma(m + 3/2) = (2m+2)! sqrt(pi) / (4^{m+1} (m+1)!)
    mpfr_sqrt(tmp, half, rnd);
    mpfr_mul(term, term, tmp, rnd);
    mpz_class num, den;
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(2 * m + 2));
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(m + 1));
    num <<= static_cast<mp_bitcnt_t>(2 * (m + 1));
    mpfr_mul_z(term, term, num.get_mpz_t(), rnd);
    mpfr_div_z(term, term, den.get_mpz_t(), rnd);
    mpfr_const_pi(tmp, opposite(rnd));
    mpfr_sqrt(tmp, tmp, opposite(rnd));
    mpfr_div(term, term, tmp, rnd);
  }

  mpfr_set_zero(sum, 1);
  for (unsigned long r = 0;; ++r) {
    mpfr_add(sum, sum, term, rnd);
    // rho = (y/2)^2 / ((r+1)(r+nu+1)) = 2 (y/2)^2 / ((r+1)(2r+2+2nu))
    mpfr_mul_2ui(rho, q2, 1, rnd);
    mpfr_div_ui(rho, rho, r + 1, rnd);
    mpfr_div_ui(rho, rho, 2 * r + 2 + static_cast<unsigned long>(twice_nu), rnd);
    if (mpfr_cmp_d(rho, 0.5) < 0) {
      // term <= 2^{-target} * sum ?
      mpfr_mul_2si(tmp, sum, -target_bits, MPFR_RNDD);
      if (mpfr_lessequal_p(term, tmp)) {
        if (rnd == MPFR_RNDU) {
          Mpfr denom(wp);
          mpfr_si_sub(denom, 1, rho, MPFR_RNDD);
          mpfr_mul(tmp, term, rho, MPFR_RNDU);
          mpfr_div(tmp, tmp, denom, MPFR_RNDU);
          mpfr_add(sum, sum, tmp, MPFR_RNDU);
        }
        break;
      }
    }
    mpfr_mul(term, term, rho, rnd);
  }
  mpfr_set(result, sum, rnd);
}

}  // namespace

BigInterval bessel_i(BesselOrder nu, const BigInterval& s, Precision p) {
  if (mpfr_sgn(s.lo()) < 0) throw std::domain_error("bessel_i requires s >= 0");
  const mpfr_prec_t wp = static_cast<mpfr_prec_t>(p.bits + 32);
  Mpfr lo(wp), hi(wp);
  bessel_endpoint(lo, s.lo(), nu.twice(), MPFR_RNDD, p.bits + 8);
  bessel_endpoint(hi, s.hi(), nu.twice(), MPFR_RNDU, p.bits + 8);
  return BigInterval::from_endpoints(lo, hi, p);
}

BigInterval pi_interval(Precision p) {
  if (p.bits < 2) throw std::invalid_argument("pi_interval requires p >= 2");
  return BigInterval::pi(p);
}

}  // namespace kdiamond
