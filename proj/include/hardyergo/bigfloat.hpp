#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "hardyergo/rational.hpp"

namespace hardy::num {

// RAII wrapper around mpfr_t.  Precision is fixed at construction.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(x_, o.x_);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(x_); }
  std::string str(int digits = 20) const;

 private:
  mpfr_t x_;
};

// Closed interval [lo, hi] with outward rounding; the primitive behind every
// certified numeric statement in the library.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) : lo_(prec), hi_(prec) {}

  static Interval exact_int(const Integer& n, mpfr_prec_t prec);
  static Interval exact_ui(unsigned long n, mpfr_prec_t prec);
  static Interval from_rational(const Rational& q, mpfr_prec_t prec);
  static Interval sqrt_ui(unsigned long n, mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return lo_.prec(); }
  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator-() const;
  Interval operator*(const Interval& o) const;
  Interval mul_rational(const Rational& q) const;

  // Monotone elementary functions; base must satisfy the usual domain
  // constraints (log: lo > 0; rational power: lo > 0).
  Interval log() const;
  Interval exp() const;
  Interval pow_rational(const Rational& e) const;
  Interval pow_si(long e) const;

  bool contains_zero() const;
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }
  double width() const;
  double mid_double() const;
  // Midpoint reduced mod 1 into [0,1), computed at full precision.
  double frac_mid() const;

  // Floor common to every point of the interval, if certain.
  std::optional<Integer> certified_floor() const;

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

 private:
  Real lo_, hi_;
};

}  // namespace hardy::num
