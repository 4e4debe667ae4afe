#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hardy {

// Exact rational arithmetic. mpq_class keeps values canonical (reduced,
// positive denominator), which the rest of the library relies on for
// structural equality.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_int(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

inline Integer ceil_int(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c;
}

inline Rational pow_int(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  Rational base = e > 0 ? q : Rational(1) / q;
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  Rational acc(1);
  Rational b = base;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// Parses "p", "p/q" or "(p/q)"; decimal literals like "3.25" or "-0.5e-3"
// are accepted and converted exactly.
std::optional<Rational> parse_rational(const std::string& text);

// Canonical printer: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

// q^(1/k) when the result is rational, std::nullopt otherwise.
std::optional<Rational> rational_root(const Rational& q, unsigned long k);

// n = s^2 * r with r square-free; returns (s, r).  n must be positive.
std::pair<Integer, Integer> split_square(const Integer& n);

}  // namespace hardy
