#include "hardyergo/hardy_expr.hpp"

#include <algorithm>
#include <sstream>

namespace hardy {

int compare_atoms(const std::optional<SubfracAtom>& a, const std::optional<SubfracAtom>& b) {
  // Growth of exp(q (log t)^beta): the larger beta dominates and contributes
  // the sign of its q; equal beta compares q directly; absence means q = 0.
  Rational qa = a ? a->q : Rational(0), ba = a ? a->beta : Rational(0);
  Rational qb = b ? b->q : Rational(0), bb = b ? b->beta : Rational(0);
  if (ba == bb) return cmp(qa, qb) == 0 ? 0 : (qa < qb ? -1 : 1);
  const Rational& qhi = ba > bb ? qa : qb;
  int dominant_sign = sgn(qhi);
  if (dominant_sign == 0) {
    // The higher-beta side is absent; compare against the remaining atom.
    return ba > bb ? -sgn(qb) : sgn(qa);
  }
  return ba > bb ? dominant_sign : -dominant_sign;
}

int compare_term_growth(const Term& a, const Term& b) {
  int c = cmp(a.c, b.c);
  if (c != 0) return c;
  int at = compare_atoms(a.atom, b.atom);
  if (at != 0) return at;
  return cmp(a.e, b.e);
}

HardyExpr HardyExpr::from_terms(BasisPtr basis, std::vector<Term> in) {
  HardyExpr r(std::move(basis));
  std::sort(in.begin(), in.end(),
            [](const Term& a, const Term& b) { return compare_term_growth(a, b) > 0; });
  for (auto& t : in) {
    if (!r.terms_.empty() && compare_term_growth(r.terms_.back(), t) == 0) {
      r.terms_.back().coeff = r.terms_.back().coeff + t.coeff;
      if (r.terms_.back().coeff.is_zero()) r.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

HardyExpr HardyExpr::constant(BasisPtr basis, const ScalarValue& v) {
  return monomial(std::move(basis), v, Rational(0));
}

HardyExpr HardyExpr::monomial(BasisPtr basis, const ScalarValue& coeff, const Rational& c,
                              const Rational& e, std::optional<SubfracAtom> atom) {
  HardyExpr r(std::move(basis));
  if (!coeff.is_zero()) r.terms_.push_back(Term{coeff, c, e, std::move(atom)});
  return r;
}

const Term& HardyExpr::leading() const {
  if (terms_.empty()) throw std::domain_error("leading term of the zero germ");
  return terms_.front();
}

bool HardyExpr::operator==(const HardyExpr& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& a = terms_[i];
    const Term& b = o.terms_[i];
    if (a.c != b.c || a.e != b.e || !(a.atom == b.atom) || !(a.coeff == b.coeff)) return false;
  }
  return true;
}

HardyExpr HardyExpr::operator+(const HardyExpr& o) const {
  BasisPtr basis = basis_ && o.basis_ && basis_ != o.basis_ ? merge_bases(basis_, o.basis_)
                                                            : (basis_ ? basis_ : o.basis_);
  std::vector<Term> all;
  for (const Term& t : terms_)
    all.push_back(Term{rebase(t.coeff, basis), t.c, t.e, t.atom});
  for (const Term& t : o.terms_)
    all.push_back(Term{rebase(t.coeff, basis), t.c, t.e, t.atom});
  return from_terms(basis, std::move(all));
}

HardyExpr HardyExpr::operator-(const HardyExpr& o) const { return *this + (-o); }

HardyExpr HardyExpr::operator-() const {
  HardyExpr r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

HardyExpr HardyExpr::mul_rational(const Rational& q) const {
  HardyExpr r(basis_);
  if (sgn(q) == 0) return r;
  r.terms_ = terms_;
  for (Term& t : r.terms_) t.coeff = t.coeff.mul_rational(q);
  return r;
}

HardyExpr HardyExpr::mul_scalar(const ScalarValue& v) const {
  HardyExpr r(basis_);
  if (v.is_zero()) return r;
  for (const Term& t : terms_) {
    auto p = t.coeff.mul(v);
    if (!p) throw std::domain_error("scalar product leaves the declared generator basis");
    r.terms_.push_back(Term{*p, t.c, t.e, t.atom});
    if (r.terms_.back().coeff.is_zero()) r.terms_.pop_back();
  }
  return r;
}

HardyExpr HardyExpr::mul(const HardyExpr& o) const {
  BasisPtr basis = basis_ && o.basis_ && basis_ != o.basis_ ? merge_bases(basis_, o.basis_)
                                                            : (basis_ ? basis_ : o.basis_);
  std::vector<Term> out;
  for (const Term& a : terms_)
    for (const Term& b : o.terms_) {
      auto coeff = rebase(a.coeff, basis).mul(rebase(b.coeff, basis));
      if (!coeff) throw std::domain_error("coefficient product leaves the declared basis");
      std::optional<SubfracAtom> atom;
      if (a.atom && b.atom) {
        if (a.atom->beta != b.atom->beta)
          throw std::domain_error("product of atoms with different log exponents");
        Rational q = a.atom->q + b.atom->q;
        if (sgn(q) != 0) atom = SubfracAtom{q, a.atom->beta};
      } else {
        atom = a.atom ? a.atom : b.atom;
      }
      out.push_back(Term{*coeff, a.c + b.c, a.e + b.e, atom});
    }
  return from_terms(basis, std::move(out));
}

HardyExpr HardyExpr::pow_int(long k) const {
  if (k == 0) return constant(basis_, ScalarValue(basis_, Rational(1)));
  if (k < 0) {
    if (terms_.size() != 1) throw std::domain_error("negative power of a non-monomial germ");
    const Term& t = terms_[0];
    if (!t.coeff.is_rational())
      throw std::domain_error("negative power of an irrational-coefficient monomial");
    HardyExpr r(basis_);
    Rational coeff = ::hardy::pow_int(t.coeff.rational_part(), k);
    std::optional<SubfracAtom> atom;
    if (t.atom) atom = SubfracAtom{t.atom->q * Rational(k), t.atom->beta};
    r.terms_.push_back(Term{ScalarValue(basis_, coeff), t.c * Rational(k), t.e * Rational(k), atom});
    return r;
  }
  HardyExpr acc = constant(basis_, ScalarValue(basis_, Rational(1)));
  HardyExpr base = *this;
  unsigned long n = static_cast<unsigned long>(k);
  while (n) {
    if (n & 1) acc = acc.mul(base);
    base = n > 1 ? base.mul(base) : base;
    n >>= 1;
  }
  return acc;
}

bool HardyExpr::is_polynomial() const {
  for (const Term& t : terms_)
    if (!(is_integer(t.c) && sgn(t.c) >= 0 && sgn(t.e) == 0 && !t.atom)) return false;
  return true;
}

bool HardyExpr::is_strongly_nonpolynomial() const {
  if (terms_.empty()) return false;
  const Term& t = terms_.front();
  if (sgn(t.c) < 0) return false;
  bool monomial_poly = is_integer(t.c) && sgn(t.e) == 0 && !t.atom;
  return !monomial_poly;
}

bool HardyExpr::is_subfractional() const { return !terms_.empty() && sgn(terms_.front().c) == 0; }

bool HardyExpr::tends_to_zero() const {
  if (terms_.empty()) return true;
  const Term& t = terms_.front();
  if (sgn(t.c) != 0) return sgn(t.c) < 0;
  int at = compare_atoms(t.atom, std::nullopt);
  if (at != 0) return at < 0;
  return sgn(t.e) < 0;
}

bool HardyExpr::grows_faster_than_log() const {
  if (terms_.empty()) return false;
  Term log_term{ScalarValue(basis_, Rational(1)), Rational(0), Rational(1), std::nullopt};
  return compare_term_growth(terms_.front(), log_term) > 0;
}

HardyExpr differentiate(const HardyExpr& a) {
  std::vector<Term> out;
  for (const Term& t : a.terms_) {
    // d/dt [ t^c log^e exp(q log^beta) ]
    //   = t^{c-1} exp(q log^beta) (c log^e + e log^{e-1} + q beta log^{e+beta-1})
    if (sgn(t.c) != 0)
      out.push_back(Term{t.coeff.mul_rational(t.c), t.c - 1, t.e, t.atom});
    if (sgn(t.e) != 0)
      out.push_back(Term{t.coeff.mul_rational(t.e), t.c - 1, t.e - 1, t.atom});
    if (t.atom)
      out.push_back(Term{t.coeff.mul_rational(t.atom->q * t.atom->beta), t.c - 1,
                         t.e + t.atom->beta - 1, t.atom});
  }
  return HardyExpr::from_terms(a.basis_, std::move(out));
}

HardyExpr differentiate(const HardyExpr& a, int times) {
  HardyExpr r = a;
  for (int i = 0; i < times; ++i) r = differentiate(r);
  return r;
}

Rational fracdeg(const HardyExpr& a) {
  if (a.terms_.empty()) throw std::domain_error("fracdeg of the zero germ");
  return a.terms_.front().c;
}

GrowthComparison compare_growth(const HardyExpr& a, const HardyExpr& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("compare_growth needs nonzero germs");
  const Term& ta = a.terms_.front();
  const Term& tb = b.terms_.front();
  int g = compare_term_growth(ta, tb);
  int f = cmp(ta.c, tb.c);
  GrowthComparison r;
  r.growth = g < 0 ? Growth::Slower : g > 0 ? Growth::Faster : Growth::Comparable;
  r.fracdeg = f < 0 ? FracdegOrder::StrictlySlower
                    : f > 0 ? FracdegOrder::StrictlyFaster : FracdegOrder::Equal;
  return r;
}

HardyExpr compose_power(const HardyExpr& a, const Rational& gamma) {
  if (sgn(gamma) <= 0) throw std::domain_error("compose_power needs a positive exponent");
  std::vector<Term> out;
  for (const Term& t : a.terms()) {
    // t^c -> t^{c*gamma};  (log t)^e -> gamma^e (log t)^e needs gamma^e
    // rational;  atoms pick up gamma^beta, also required rational.
    Rational ge;
    if (is_integer(t.e)) {
      ge = pow_int(gamma, t.e.get_num().get_si());
    } else {
      auto root = rational_root(pow_int(gamma, t.e.get_num().get_si()),
                                t.e.get_den().get_ui());
      if (!root) throw std::domain_error("compose_power: gamma^e irrational");
      ge = *root;
    }
    std::optional<SubfracAtom> atom;
    if (t.atom) {
      auto root = rational_root(pow_int(gamma, t.atom->beta.get_num().get_si()),
                                t.atom->beta.get_den().get_ui());
      if (!root) throw std::domain_error("compose_power: gamma^beta irrational");
      atom = SubfracAtom{t.atom->q * *root, t.atom->beta};
    }
    out.push_back(Term{t.coeff.mul_rational(ge), t.c * gamma, t.e, atom});
  }
  return HardyExpr::from_terms(a.basis(), std::move(out));
}

namespace {
// One grammar term per coefficient basis component: "q*sym*t^c*log(t)^e*atom".
// The sign is returned separately so the expression printer can join with
// "+"/"-".
std::pair<bool, std::string> component_str(const BasisPtr& basis, int gen, Rational q,
                                           const Term& t) {
  bool neg = sgn(q) < 0;
  if (neg) q = -q;
  std::vector<std::string> factors;
  bool q_is_one = q == 1;
  if (gen != 0) {
    const std::string& tag = basis->gen(gen).tag;
    factors.push_back(q_is_one ? tag : to_string(q) + "*" + tag);
  } else if (!q_is_one) {
    factors.push_back(to_string(q));
  }
  auto power = [](const char* base, const Rational& e) -> std::string {
    if (e == 1) return base;
    if (is_integer(e) && sgn(e) > 0) return std::string(base) + "^" + to_string(e);
    return std::string(base) + "^(" + to_string(e) + ")";
  };
  if (sgn(t.c) != 0) factors.push_back(power("t", t.c));
  if (sgn(t.e) != 0) factors.push_back(power("log(t)", t.e));
  if (t.atom)
    factors.push_back("exps(" + to_string(t.atom->q) + "," + to_string(t.atom->beta) + ")");
  if (factors.empty()) factors.push_back(to_string(q));
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << "*";
    os << factors[i];
  }
  return {neg, os.str()};
}
}  // namespace

std::string HardyExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    for (const auto& [gen, q] : t.coeff.coeffs()) {
      auto [neg, s] = component_str(basis_, gen, q, t);
      if (first)
        os << (neg ? "-" : "") << s;
      else
        os << (neg ? " - " : " + ") << s;
      first = false;
    }
  }
  return os.str();
}

}  // namespace hardy
