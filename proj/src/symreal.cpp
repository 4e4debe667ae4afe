#include "hardyergo/symreal.hpp"

#include <sstream>
#include <stdexcept>

namespace hardy {

std::string SymMonomial::str() const {
  if (is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  if (radicand != 1) {
    os << "sqrt(" << radicand << ")";
    first = false;
  }
  for (const auto& [name, e] : named) {
    if (!first) os << "*";
    first = false;
    os << name;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

SymReal::SymReal(const Rational& q) {
  if (sgn(q) != 0) terms_[SymMonomial{}] = q;
}

SymReal SymReal::monomial(const SymMonomial& m, const Rational& q) {
  SymReal r;
  if (sgn(q) != 0) r.terms_[m] = q;
  return r;
}

SymReal SymReal::from_scalar(const ScalarValue& v) {
  SymReal r;
  for (const auto& [i, q] : v.coeffs()) {
    const Generator& g = v.basis()->gen(i);
    SymMonomial m;
    switch (g.kind) {
      case GenKind::Unit:
        break;
      case GenKind::Sqrt:
        m.radicand = g.radicand;
        break;
      case GenKind::Named:
        m.named[g.tag] = 1;
        break;
      case GenKind::NamedPow:
        m.named[g.base] = g.power;
        break;
    }
    r = r + monomial(m, q);
  }
  return r;
}

bool SymReal::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational SymReal::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational()) throw std::logic_error("SymReal::rational_value on irrational value");
  return terms_.begin()->second;
}

SymReal SymReal::operator+(const SymReal& o) const {
  SymReal r = *this;
  for (const auto& [m, q] : o.terms_) {
    auto it = r.terms_.find(m);
    if (it == r.terms_.end()) {
      r.terms_[m] = q;
    } else {
      it->second += q;
      if (sgn(it->second) == 0) r.terms_.erase(it);
    }
  }
  return r;
}

SymReal SymReal::operator-(const SymReal& o) const { return *this + (-o); }

SymReal SymReal::operator-() const {
  SymReal r = *this;
  for (auto& [m, q] : r.terms_) q = -q;
  return r;
}

SymReal SymReal::mul_rational(const Rational& q) const {
  SymReal r;
  if (sgn(q) == 0) return r;
  r.terms_ = terms_;
  for (auto& [m, c] : r.terms_) c *= q;
  return r;
}

SymReal SymReal::operator*(const SymReal& o) const {
  SymReal r;
  for (const auto& [ma, qa] : terms_)
    for (const auto& [mb, qb] : o.terms_) {
      SymMonomial m;
      Rational q = qa * qb;
      Integer prod = Integer(ma.radicand) * Integer(mb.radicand);
      auto [s, rad] = split_square(prod);
      q *= Rational(s);
      m.radicand = rad.get_ui();
      m.named = ma.named;
      for (const auto& [name, e] : mb.named) {
        m.named[name] += e;
        if (m.named[name] == 0) m.named.erase(name);
      }
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        if (sgn(q) != 0) r.terms_[m] = q;
      } else {
        it->second += q;
        if (sgn(it->second) == 0) r.terms_.erase(it);
      }
    }
  return r;
}

std::string SymReal::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, q] : terms_) {
    Rational a = q;
    if (!first) {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    if (m.is_unit())
      os << to_string(a);
    else if (a == 1)
      os << m.str();
    else if (a == -1)
      os << "-" << m.str();
    else
      os << to_string(a) << "*" << m.str();
  }
  return os.str();
}

SymRatio::SymRatio(const SymReal& n, const SymReal& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw std::invalid_argument("SymRatio: zero denominator");
  normalize();
}

void SymRatio::normalize() {
  if (num_.is_zero()) {
    den_ = SymReal(Rational(1));
    return;
  }
  // Rational content normalization keeps coefficient sizes in check.
  const Rational& lead = den_.terms().begin()->second;
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num_ = num_.mul_rational(inv);
    den_ = den_.mul_rational(inv);
  }
  if (den_.is_rational() && num_.is_rational()) {
    num_ = SymReal(num_.rational_value() / den_.rational_value());
    den_ = SymReal(Rational(1));
  }
}

bool SymRatio::is_rational() const {
  if (num_.is_zero()) return true;
  // num/den in Q  <=>  num = q * den for a rational q: the term maps must be
  // proportional over the same monomial support.
  if (num_.terms().size() != den_.terms().size()) return false;
  auto in = num_.terms().begin();
  auto id = den_.terms().begin();
  Rational ratio = in->second / id->second;
  for (; in != num_.terms().end(); ++in, ++id) {
    if (!(in->first == id->first)) return false;
    if (in->second != ratio * id->second) return false;
  }
  return true;
}

Rational SymRatio::rational_value() const {
  if (num_.is_zero()) return Rational(0);
  if (!is_rational()) throw std::logic_error("SymRatio::rational_value on irrational value");
  return num_.terms().begin()->second / den_.terms().begin()->second;
}

SymRatio SymRatio::operator+(const SymRatio& o) const {
  return SymRatio(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

SymRatio SymRatio::operator-(const SymRatio& o) const { return *this + (-o); }

SymRatio SymRatio::operator-() const {
  SymRatio r = *this;
  r.num_ = -r.num_;
  return r;
}

SymRatio SymRatio::operator*(const SymRatio& o) const {
  return SymRatio(num_ * o.num_, den_ * o.den_);
}

SymRatio SymRatio::operator/(const SymRatio& o) const {
  if (o.is_zero()) throw std::invalid_argument("SymRatio: division by zero");
  return SymRatio(num_ * o.den_, den_ * o.num_);
}

SymRatio SymRatio::mul_rational(const Rational& q) const {
  SymRatio r = *this;
  r.num_ = r.num_.mul_rational(q);
  if (r.num_.is_zero()) r.den_ = SymReal(Rational(1));
  return r;
}

bool SymRatio::operator==(const SymRatio& o) const {
  return (num_ * o.den_ - o.num_ * den_).is_zero();
}

std::string SymRatio::str() const {
  if (den_.is_rational() && den_.rational_value() == 1) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace hardy
