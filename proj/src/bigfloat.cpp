#include "hardyergo/bigfloat.hpp"

#include <algorithm>
#include <cmath>

namespace hardy::num {

std::string Real::str(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, x_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Interval Interval::exact_int(const Integer& n, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), n.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::exact_ui(unsigned long n, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_ui(r.lo_.get(), n, MPFR_RNDD);
  mpfr_set_ui(r.hi_.get(), n, MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::sqrt_ui(unsigned long n, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_sqrt_ui(r.lo_.get(), n, MPFR_RNDD);
  mpfr_sqrt_ui(r.hi_.get(), n, MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::max(prec(), o.prec()));
  mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::max(prec(), o.prec()));
  mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  Interval r(std::max(prec(), o.prec()));
  mpfr_t t;
  mpfr_init2(t, r.prec());
  const mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t, MPFR_RNDD);
      mpfr_mul(t, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval Interval::mul_rational(const Rational& q) const {
  Interval r(prec());
  if (sgn(q) >= 0) {
    mpfr_mul_q(r.lo_.get(), lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_.get(), hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(r.lo_.get(), hi_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_.get(), lo_.get(), q.get_mpq_t(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::log() const {
  Interval r(prec());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec());
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::pow_si(long e) const {
  if (e == 0) return exact_ui(1, prec());
  Interval r(prec());
  if (e > 0) {
    // Requires lo >= 0 or even power handled by caller; eval paths keep
    // bases positive, coefficients go through operator*.
    mpfr_pow_si(r.lo_.get(), lo_.get(), e, MPFR_RNDD);
    mpfr_pow_si(r.hi_.get(), hi_.get(), e, MPFR_RNDU);
  } else {
    mpfr_pow_si(r.lo_.get(), hi_.get(), e, MPFR_RNDD);
    mpfr_pow_si(r.hi_.get(), lo_.get(), e, MPFR_RNDU);
  }
  return r;
}

Interval Interval::pow_rational(const Rational& e) const {
  if (sgn(e) == 0) return exact_ui(1, prec());
  if (is_integer(e)) return pow_si(e.get_num().get_si());
  // x^(p/q) = (x^(1/q))^p for x > 0; root then integer power keeps the
  // operation monotone and avoids exp/log in the common small-q case.
  unsigned long q = e.get_den().get_ui();
  long p = e.get_num().get_si();
  Interval root(prec());
  if (e.get_den().fits_ulong_p() && e.get_num().fits_slong_p() && q <= 64) {
    mpfr_rootn_ui(root.lo_.get(), lo_.get(), q, MPFR_RNDD);
    mpfr_rootn_ui(root.hi_.get(), hi_.get(), q, MPFR_RNDU);
    return root.pow_si(p);
  }
  return (log().mul_rational(e)).exp();
}

bool Interval::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_.get(), lo_.get(), MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

double Interval::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, prec());
  mpfr_add(m, lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double Interval::frac_mid() const {
  mpfr_t m, f;
  mpfr_init2(m, prec());
  mpfr_init2(f, prec());
  mpfr_add(m, lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_floor(f, m);
  mpfr_sub(m, m, f, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  mpfr_clear(f);
  if (d < 0) d += 1.0;
  if (d >= 1.0) d -= 1.0;
  return d;
}

std::optional<Integer> Interval::certified_floor() const {
  Integer fl, fh;
  mpfr_t t;
  mpfr_init2(t, prec());
  mpfr_floor(t, lo_.get());
  mpfr_get_z(fl.get_mpz_t(), t, MPFR_RNDN);
  mpfr_floor(t, hi_.get());
  mpfr_get_z(fh.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  if (fl == fh) return fl;
  return std::nullopt;
}

}  // namespace hardy::num
