#include "hardyergo/hardy_expr.hpp"

namespace hardy {

num::Interval eval_interval(const HardyExpr& a, const num::Interval& t, mpfr_prec_t prec) {
  if (!t.is_positive()) throw std::domain_error("eval: t must be positive");
  bool needs_log = false;
  for (const Term& term : a.terms())
    if (sgn(term.e) != 0 || term.atom) needs_log = true;
  num::Interval two = num::Interval::exact_ui(2, prec);
  if (needs_log && (t - two).is_negative())
    throw std::domain_error("eval: t >= 2 required when log terms are present");

  num::Interval acc(prec);
  std::optional<num::Interval> logt;
  auto get_log = [&]() -> const num::Interval& {
    if (!logt) logt = t.log();
    return *logt;
  };
  for (const Term& term : a.terms()) {
    num::Interval v = term.coeff.enclosure(prec);
    if (sgn(term.c) != 0) v = v * t.pow_rational(term.c);
    if (sgn(term.e) != 0) v = v * get_log().pow_rational(term.e);
    if (term.atom)
      v = v * get_log().pow_rational(term.atom->beta).mul_rational(term.atom->q).exp();
    acc = acc + v;
  }
  return acc;
}

num::Interval eval_at_integer(const HardyExpr& a, const Integer& t, mpfr_prec_t prec) {
  return eval_interval(a, num::Interval::exact_int(t, prec), prec);
}

std::vector<num::Interval> taylor_coeffs(const HardyExpr& a, const Integer& t0, int order,
                                         mpfr_prec_t prec) {
  std::vector<num::Interval> out;
  HardyExpr d = a;
  Integer fact(1);
  for (int l = 0; l <= order; ++l) {
    if (l > 0) {
      d = differentiate(d);
      fact *= l;
    }
    num::Interval v = d.is_zero() ? num::Interval(prec) : eval_at_integer(d, t0, prec);
    out.push_back(v.mul_rational(Rational(Integer(1), fact)));
  }
  return out;
}

}  // namespace hardy
