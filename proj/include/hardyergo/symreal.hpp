#pragma once

#include <map>
#include <string>
#include <vector>

#include "hardyergo/scalar.hpp"

namespace hardy {

// Multiplicative monomial over the declared irrational atoms: a square-free
// radicand (sqrt part) times a Laurent monomial in the named atoms.  Distinct
// monomials are treated as Q-linearly independent reals; on top of the
// basis-level Q-independence assumption this also assumes the named atoms are
// algebraically independent.
struct SymMonomial {
  unsigned long radicand = 1;            // square-free; 1 = no sqrt factor
  std::map<std::string, int> named;      // atom -> exponent (nonzero)

  bool operator<(const SymMonomial& o) const {
    if (radicand != o.radicand) return radicand < o.radicand;
    return named < o.named;
  }
  bool operator==(const SymMonomial& o) const {
    return radicand == o.radicand && named == o.named;
  }
  bool is_unit() const { return radicand == 1 && named.empty(); }
  std::string str() const;
};

// Element of the ring Q[sqrt atoms, named atoms^{+-1}].
class SymReal {
 public:
  SymReal() = default;
  explicit SymReal(const Rational& q);
  static SymReal monomial(const SymMonomial& m, const Rational& q = Rational(1));
  static SymReal from_scalar(const ScalarValue& v);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rational rational_value() const;  // valid when is_rational()

  SymReal operator+(const SymReal& o) const;
  SymReal operator-(const SymReal& o) const;
  SymReal operator-() const;
  SymReal operator*(const SymReal& o) const;
  SymReal mul_rational(const Rational& q) const;
  bool operator==(const SymReal& o) const { return terms_ == o.terms_; }

  const std::map<SymMonomial, Rational>& terms() const { return terms_; }
  std::string str() const;

 private:
  std::map<SymMonomial, Rational> terms_;  // no zero coefficients
};

// Fraction num/den over SymReal; the field the classification solver
// eliminates in.  den is always nonzero.
class SymRatio {
 public:
  SymRatio() : num_(), den_(Rational(1)) {}
  explicit SymRatio(const Rational& q) : num_(q), den_(Rational(1)) {}
  explicit SymRatio(const SymReal& n) : num_(n), den_(Rational(1)) {}
  SymRatio(const SymReal& n, const SymReal& d);

  bool is_zero() const { return num_.is_zero(); }
  // True iff the value is a rational number.
  bool is_rational() const;
  Rational rational_value() const;

  const SymReal& num() const { return num_; }
  const SymReal& den() const { return den_; }

  SymRatio operator+(const SymRatio& o) const;
  SymRatio operator-(const SymRatio& o) const;
  SymRatio operator-() const;
  SymRatio operator*(const SymRatio& o) const;
  SymRatio operator/(const SymRatio& o) const;
  SymRatio mul_rational(const Rational& q) const;
  bool operator==(const SymRatio& o) const;

  std::string str() const;

 private:
  void normalize();
  SymReal num_, den_;
};

}  // namespace hardy
