#include <algorithm>

#include "hardyergo/hardy_expr.hpp"

namespace hardy {

namespace {
// Growth of a monomial relative to the constant 1.
int growth_vs_one(const Term& t) {
  if (sgn(t.c) != 0) return sgn(t.c);
  int at = compare_atoms(t.atom, std::nullopt);
  if (at != 0) return at;
  return sgn(t.e);
}
}  // namespace

DecomposedFamily decompose_family(const std::vector<std::vector<HardyExpr>>& family) {
  if (family.empty()) throw std::invalid_argument("decompose_family: empty family");
  DecomposedFamily out;
  out.ell = family.size();
  out.k = static_cast<int>(family[0].size());
  BasisPtr basis;
  for (const auto& member : family) {
    if (static_cast<int>(member.size()) != out.k)
      throw std::invalid_argument("decompose_family: inconsistent dimensions");
    for (const auto& a : member)
      if (a.basis()) basis = basis ? merge_bases(basis, a.basis()) : a.basis();
  }
  if (!basis) basis = GeneratorBasis::unit_only();

  // Collect the distinct nonpolynomial monomials across the family.
  struct GenKey {
    Rational c, e;
    std::optional<SubfracAtom> atom;
  };
  std::vector<GenKey> keys;
  auto key_of = [](const Term& t) { return GenKey{t.c, t.e, t.atom}; };
  auto same_key = [](const GenKey& a, const GenKey& b) {
    return a.c == b.c && a.e == b.e && a.atom == b.atom;
  };
  long max_deg = 0;
  for (const auto& member : family)
    for (const auto& a : member)
      for (const Term& t : a.terms()) {
        bool poly = is_integer(t.c) && sgn(t.c) >= 0 && sgn(t.e) == 0 && !t.atom;
        if (poly) {
          max_deg = std::max(max_deg, t.c.get_num().get_si());
          continue;
        }
        if (growth_vs_one(t) <= 0) continue;  // o(1) or bounded remainder
        GenKey k = key_of(t);
        bool found = false;
        for (const auto& existing : keys)
          if (same_key(existing, k)) found = true;
        if (!found) keys.push_back(k);
      }

  std::sort(keys.begin(), keys.end(), [&](const GenKey& a, const GenKey& b) {
    Term ta{ScalarValue(basis, Rational(1)), a.c, a.e, a.atom};
    Term tb{ScalarValue(basis, Rational(1)), b.c, b.e, b.atom};
    return compare_term_growth(ta, tb) < 0;
  });

  ScalarValue one(basis, Rational(1));
  for (const auto& k : keys)
    out.generators.push_back(HardyExpr::monomial(basis, one, k.c, k.e, k.atom));
  out.degree = static_cast<int>(max_deg);

  out.m1 = 0;
  out.m2 = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    Term g{one, keys[i].c, keys[i].e, keys[i].atom};
    Term log_term{one, Rational(0), Rational(1), std::nullopt};
    if (compare_term_growth(g, log_term) <= 0) out.m1 = static_cast<int>(i) + 1;
    if (sgn(keys[i].c) == 0) out.m2 = static_cast<int>(i) + 1;
  }

  ScalarValue zero(basis);
  out.alpha.assign(out.ell, std::vector<std::vector<ScalarValue>>(
                                keys.size(), std::vector<ScalarValue>(out.k, zero)));
  out.beta.assign(out.ell, std::vector<std::vector<ScalarValue>>(
                               static_cast<std::size_t>(out.degree) + 1,
                               std::vector<ScalarValue>(out.k, zero)));
  out.has_remainder.assign(out.ell, false);

  for (std::size_t j = 0; j < out.ell; ++j)
    for (int coord = 0; coord < out.k; ++coord)
      for (const Term& t : family[j][static_cast<std::size_t>(coord)].terms()) {
        ScalarValue coeff = rebase(t.coeff, basis);
        bool poly = is_integer(t.c) && sgn(t.c) >= 0 && sgn(t.e) == 0 && !t.atom;
        if (poly) {
          auto p = static_cast<std::size_t>(t.c.get_num().get_si());
          out.beta[j][p][static_cast<std::size_t>(coord)] =
              out.beta[j][p][static_cast<std::size_t>(coord)] + coeff;
          continue;
        }
        if (growth_vs_one(t) <= 0) {
          out.has_remainder[j] = true;
          continue;
        }
        for (std::size_t i = 0; i < keys.size(); ++i)
          if (same_key(keys[i], key_of(t)))
            out.alpha[j][i][static_cast<std::size_t>(coord)] =
                out.alpha[j][i][static_cast<std::size_t>(coord)] + coeff;
      }
  return out;
}

}  // namespace hardy
