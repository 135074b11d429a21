#include "kdiamond/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace kdiamond {
namespace {

constexpr long kMinPrecision = 2;

mpfr_prec_t checked(Precision p) {
  if (p.bits < kMinPrecision) throw std::invalid_argument("precision must be at least 2 bits");
  return static_cast<mpfr_prec_t>(p.bits);
}

/// Scratch mpfr value with RAII cleanup.
class Scratch {
 public:
  explicit Scratch(mpfr_prec_t p) { mpfr_init2(v_, p); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  ~Scratch() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  operator mpfr_ptr() { return v_; }
  mpfr_ptr operator->() { return v_; }

 private:
  mpfr_t v_;
};

std::string format(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  char* buf = nullptr;
  int n = 0;
  if (rnd == MPFR_RNDD) {
    n = mpfr_asprintf(&buf, "%.*RDe", std::max(digits - 1, 0), x);
  } else if (rnd == MPFR_RNDU) {
    n = mpfr_asprintf(&buf, "%.*RUe", std::max(digits - 1, 0), x);
  } else {
    n = mpfr_asprintf(&buf, "%.*RNe", std::max(digits - 1, 0), x);
  }
  if (n < 0 || buf == nullptr) throw std::runtime_error("mpfr_asprintf failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

BigInterval::BigInterval(Precision p) {
  mpfr_init2(lo_, checked(p));
  mpfr_init2(hi_, checked(p));
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

BigInterval::BigInterval(Precision p, long value) : BigInterval(p) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

BigInterval::BigInterval(Precision p, const mpz_class& value) : BigInterval(p) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

BigInterval::BigInterval(Precision p, const mpq_class& value) : BigInterval(p) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

BigInterval::BigInterval(const BigInterval& other) {
  mpfr_init2(lo_, mpfr_get_prec(other.lo_));
  mpfr_init2(hi_, mpfr_get_prec(other.hi_));
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

BigInterval::BigInterval(BigInterval&& other) noexcept : BigInterval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

BigInterval& BigInterval::operator=(const BigInterval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, mpfr_get_prec(other.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(other.hi_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

BigInterval& BigInterval::operator=(BigInterval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

BigInterval::~BigInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

BigInterval BigInterval::hull(const BigInterval& a, const BigInterval& b) {
  Precision p = std::max(a.precision(), b.precision());
  BigInterval out(p);
  mpfr_set(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_set(out.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_greater_p(out.lo_, out.hi_)) throw std::invalid_argument("empty interval hull");
  return out;
}

BigInterval BigInterval::pi(Precision p) {
  BigInterval out(p);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::cos_pi(Precision p, const mpq_class& theta) {
  // Reduce to t in [0, 1] using period 2 and evenness.
  mpz_class fl;
  mpq_class half_theta = theta / 2;
  mpz_fdiv_q(fl.get_mpz_t(), half_theta.get_num_mpz_t(), half_theta.get_den_mpz_t());
  mpq_class t = theta - 2 * mpq_class(fl);
  if (t > 1) t = 2 - t;

  if (t == 0) return BigInterval(p, 1L);
  if (t == 1) return BigInterval(p, -1L);
  if (t == mpq_class(1, 2)) return BigInterval(p, 0L);

  const mpfr_prec_t wp = checked(p) + 16;
  BigInterval pi_enc = pi(Precision{static_cast<long>(wp)});
  Scratch xlo(wp), xhi(wp), tmp(wp);
  mpfr_mul_q(xlo, pi_enc.lo_, t.get_mpq_t(), MPFR_RNDD);
  mpfr_mul_q(xhi, pi_enc.hi_, t.get_mpq_t(), MPFR_RNDU);

  BigInterval out(p);
  // cos is decreasing on [0, pi].
  mpfr_cos(tmp, xlo, MPFR_RNDU);
  mpfr_set(out.hi_, tmp, MPFR_RNDU);
  if (mpfr_greaterequal_p(xhi, pi_enc.lo_)) {
    mpfr_set_si(out.lo_, -1, MPFR_RNDD);
  } else {
    mpfr_cos(tmp, xhi, MPFR_RNDD);
    mpfr_set(out.lo_, tmp, MPFR_RNDD);
  }
  return out;
}

BigInterval BigInterval::sin_pi(Precision p, const mpq_class& theta) {
  return cos_pi(p, theta - mpq_class(1, 2));
}

BigInterval BigInterval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision p) {
  BigInterval out(p);
  mpfr_set(out.lo_, lo, MPFR_RNDD);
  mpfr_set(out.hi_, hi, MPFR_RNDU);
  if (mpfr_greater_p(out.lo_, out.hi_)) throw std::invalid_argument("empty interval");
  return out;
}

BigInterval BigInterval::from_decimal(Precision p, const std::string& text) {
  BigInterval out(p);
  if (mpfr_set_str(out.lo_, text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(out.hi_, text.c_str(), 10, MPFR_RNDU) != 0) {
    throw std::invalid_argument("not a decimal number: " + text);
  }
  return out;
}

BigInterval BigInterval::operator-() const {
  BigInterval out(precision());
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

namespace {

void raise_precision(mpfr_ptr lo, mpfr_ptr hi, mpfr_prec_t p) {
  if (mpfr_get_prec(lo) < p) mpfr_prec_round(lo, p, MPFR_RNDD);
  if (mpfr_get_prec(hi) < p) mpfr_prec_round(hi, p, MPFR_RNDU);
}

}  // namespace

BigInterval& BigInterval::operator+=(const BigInterval& rhs) {
  raise_precision(lo_, hi_, mpfr_get_prec(rhs.lo_));
  mpfr_add(lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this;
}

BigInterval& BigInterval::operator-=(const BigInterval& rhs) {
  raise_precision(lo_, hi_, mpfr_get_prec(rhs.lo_));
  Scratch t(mpfr_get_prec(lo_));
  mpfr_sub(t, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, rhs.lo_, MPFR_RNDU);
  mpfr_set(lo_, t, MPFR_RNDD);
  return *this;
}

BigInterval& BigInterval::operator*=(const BigInterval& rhs) {
  const mpfr_prec_t p = std::max(mpfr_get_prec(lo_), mpfr_get_prec(rhs.lo_));
  Scratch l1(p), l2(p), l3(p), l4(p), u1(p), u2(p), u3(p), u4(p);
  mpfr_mul(l1, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_mul(l2, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_mul(l3, hi_, rhs.lo_, MPFR_RNDD);
  mpfr_mul(l4, hi_, rhs.hi_, MPFR_RNDD);
  mpfr_mul(u1, lo_, rhs.lo_, MPFR_RNDU);
  mpfr_mul(u2, lo_, rhs.hi_, MPFR_RNDU);
  mpfr_mul(u3, hi_, rhs.lo_, MPFR_RNDU);
  mpfr_mul(u4, hi_, rhs.hi_, MPFR_RNDU);
  raise_precision(lo_, hi_, p);
  mpfr_min(l1, l1, l2, MPFR_RNDD);
  mpfr_min(l3, l3, l4, MPFR_RNDD);
  mpfr_min(lo_, l1, l3, MPFR_RNDD);
  mpfr_max(u1, u1, u2, MPFR_RNDU);
  mpfr_max(u3, u3, u4, MPFR_RNDU);
  mpfr_max(hi_, u1, u3, MPFR_RNDU);
  return *this;
}

BigInterval& BigInterval::operator/=(const BigInterval& rhs) {
  if (rhs.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  const mpfr_prec_t p = std::max(mpfr_get_prec(lo_), mpfr_get_prec(rhs.lo_));
  Scratch l1(p), l2(p), l3(p), l4(p), u1(p), u2(p), u3(p), u4(p);
  mpfr_div(l1, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_div(l2, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_div(l3, hi_, rhs.lo_, MPFR_RNDD);
  mpfr_div(l4, hi_, rhs.hi_, MPFR_RNDD);
  mpfr_div(u1, lo_, rhs.lo_, MPFR_RNDU);
  mpfr_div(u2, lo_, rhs.hi_, MPFR_RNDU);
  mpfr_div(u3, hi_, rhs.lo_, MPFR_RNDU);
  mpfr_div(u4, hi_, rhs.hi_, MPFR_RNDU);
  raise_precision(lo_, hi_, p);
  mpfr_min(l1, l1, l2, MPFR_RNDD);
  mpfr_min(l3, l3, l4, MPFR_RNDD);
  mpfr_min(lo_, l1, l3, MPFR_RNDD);
  mpfr_max(u1, u1, u2, MPFR_RNDU);
  mpfr_max(u3, u3, u4, MPFR_RNDU);
  mpfr_max(hi_, u1, u3, MPFR_RNDU);
  return *this;
}

bool BigInterval::contains(const mpz_class& value) const {
  return mpfr_cmp_z(lo_, value.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, value.get_mpz_t()) >= 0;
}

bool BigInterval::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

bool BigInterval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool BigInterval::subset_of(const BigInterval& outer) const {
  return mpfr_greaterequal_p(lo_, outer.lo_) && mpfr_lessequal_p(hi_, outer.hi_);
}

bool BigInterval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool BigInterval::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }

std::optional<mpz_class> BigInterval::unique_integer() const {
  if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) return std::nullopt;
  mpz_class c, f;
  mpfr_get_z(c.get_mpz_t(), lo_, MPFR_RNDU);
  mpfr_get_z(f.get_mpz_t(), hi_, MPFR_RNDD);
  if (c == f) return c;
  return std::nullopt;
}

mpz_class BigInterval::round_mid() const {
  Scratch m(mpfr_get_prec(lo_) + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), m, MPFR_RNDN);
  return out;
}

double BigInterval::width() const {
  Scratch w(mpfr_get_prec(lo_));
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w, MPFR_RNDU);
}

double BigInterval::mid_double() const {
  Scratch m(mpfr_get_prec(lo_) + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  return mpfr_get_d(m, MPFR_RNDN);
}

double BigInterval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double BigInterval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string BigInterval::lo_string(int digits) const { return format(lo_, digits, MPFR_RNDD); }
std::string BigInterval::hi_string(int digits) const { return format(hi_, digits, MPFR_RNDU); }

std::string BigInterval::mid_string(int digits) const {
  Scratch m(mpfr_get_prec(lo_) + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  return format(m, digits, MPFR_RNDN);
}

BigInterval sqrt(const BigInterval& x) {
  if (mpfr_sgn(x.hi_) < 0) throw std::domain_error("sqrt of a negative interval");
  BigInterval out(x.precision());
  if (mpfr_sgn(x.lo_) < 0) {
    mpfr_set_zero(out.lo_, 1);
  } else {
    mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

BigInterval exp(const BigInterval& x) {
  BigInterval out(x.precision());
  mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

BigInterval log(const BigInterval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("log of an interval not strictly positive");
  BigInterval out(x.precision());
  mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

BigInterval abs(const BigInterval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  BigInterval out(x.precision());
  mpfr_set_zero(out.lo_, 1);
  mpfr_neg(out.hi_, x.lo_, MPFR_RNDU);
  mpfr_max(out.hi_, out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

BigInterval sqr(const BigInterval& x) {
  BigInterval a = abs(x);
  BigInterval out(x.precision());
  mpfr_sqr(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

BigInterval pow(const BigInterval& x, int exponent) {
  if (exponent < 0) return BigInterval(x.precision(), 1L) / pow(x, -exponent);
  BigInterval result(x.precision(), 1L);
  BigInterval base = x;
  bool first = true;
  while (exponent > 0) {
    if (exponent & 1) {
      result = first ? base : result * base;
      first = false;
    }
    exponent >>= 1;
    if (exponent > 0) base = sqr(base);
  }
  return result;
}

BigInterval pow(const BigInterval& x, const mpq_class& exponent) {
  if (exponent.get_den() == 1 && exponent.get_num().fits_sint_p()) {
    return pow(x, static_cast<int>(exponent.get_num().get_si()));
  }
  return exp(log(x) * BigInterval(x.precision(), exponent));
}

bool certainly_less(const BigInterval& a, const BigInterval& b) { return mpfr_less_p(a.hi(), b.lo()); }

bool certainly_less_equal(const BigInterval& a, const BigInterval& b) {
  return mpfr_lessequal_p(a.hi(), b.lo());
}

Decision decide_less_equal(const BigInterval& a, const BigInterval& b) {
  if (mpfr_lessequal_p(a.hi(), b.lo())) return Decision::kTrue;
  if (mpfr_greater_p(a.lo(), b.hi())) return Decision::kFalse;
  return Decision::kUndecided;
}

Decision decide_less(const BigInterval& a, const BigInterval& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Decision::kTrue;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return Decision::kFalse;
  return Decision::kUndecided;
}

}  // namespace kdiamond
