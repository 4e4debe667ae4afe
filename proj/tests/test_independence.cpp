#include <random>

#include "doctest.h"
#include "hardyergo/independence.hpp"

using namespace hardy;
using namespace hardy::indep;

namespace {
std::vector<HardyExpr> family_of(const std::vector<std::string>& exprs,
                                 const std::string& basis_decl = "") {
  BasisBuilder bb(GeneratorBasis::parse(basis_decl));
  std::vector<HardyExpr> out;
  for (const auto& s : exprs) out.push_back(parse_expr(s, bb));
  BasisPtr final_basis = bb.freeze();
  for (auto& e : out) {
    std::vector<Term> ts;
    for (const Term& t : e.terms()) ts.push_back(Term{rebase(t.coeff, final_basis), t.c, t.e, t.atom});
    e = HardyExpr::from_terms(final_basis, ts);
  }
  return out;
}

// Is coordinate j of the witness irrational (for a suitable choice of xi)?
bool coord_irrational(const Witness& w, std::size_t j) {
  return !w.c_xi[j].is_zero() || !w.c_f[j].is_rational();
}
bool coord_nonzero(const Witness& w, std::size_t j) {
  return !w.c_xi[j].is_zero() || !w.c_f[j].is_zero();
}
}  // namespace

TEST_CASE("the four reference families classify as published") {
  auto f1 = family_of({"t^(3/2)", "t^(3/2)+t^(1/2)"});
  auto c1 = classify_family(f1);
  CHECK(c1.label == IndependenceClass::StronglyIndependent);
  CHECK(!c1.witness);

  auto f2 = family_of({"t^(3/2)", "t^(3/2)+t"});
  auto c2 = classify_family(f2);
  CHECK(c2.label == IndependenceClass::StronglyIrrationallyIndependent);
  REQUIRE(c2.witness);
  CHECK(verify_witness(f2, *c2.witness));
  // the strong-tier witness must be fully rational (no irrational coordinate
  // can produce one here)
  for (std::size_t j = 0; j < 2; ++j) CHECK(!coord_irrational(*c2.witness, j));

  auto f3 = family_of({"t^3 + a*t^2 + a2*t", "t^2 + a*t"}, "a=irr(2.6457513);a2=pow(a,2)");
  auto c3 = classify_family(f3);
  CHECK(c3.label == IndependenceClass::IrrationallyIndependent);
  REQUIRE(c3.witness);
  CHECK(c3.witness->violates == "StronglyIrrationallyIndependent");
  CHECK(verify_witness(f3, *c3.witness));
  bool any_irr = false;
  for (std::size_t j = 0; j < 2; ++j) any_irr = any_irr || coord_irrational(*c3.witness, j);
  CHECK(any_irr);

  auto f4 = family_of({"sqrt(2)*t^2", "sqrt(2)*t^2 + sqrt(3)*t"});
  auto c4 = classify_family(f4);
  CHECK(c4.label == IndependenceClass::PairwiseIndependent);
  REQUIRE(c4.witness);
  CHECK(c4.witness->violates == "IrrationallyIndependent");
  CHECK(verify_witness(f4, *c4.witness));
  for (std::size_t j = 0; j < 2; ++j)
    if (coord_nonzero(*c4.witness, j)) CHECK(coord_irrational(*c4.witness, j));
}

TEST_CASE("degenerate and dependent families") {
  auto dep = family_of({"t^2", "2*t^2"});
  auto c = classify_family(dep);
  CHECK(c.label == IndependenceClass::Dependent);
  REQUIRE(c.witness);
  CHECK(verify_witness(dep, *c.witness));

  // single member families
  CHECK(classify_family(family_of({"t^(3/2)"})).label == IndependenceClass::StronglyIndependent);
  CHECK(classify_family(family_of({"t^2"})).label ==
        IndependenceClass::StronglyIrrationallyIndependent);
  // 1/sqrt2 * (sqrt2 t^2) = t^2, so a single irrational-leading polynomial
  // is not irrationally independent
  CHECK(classify_family(family_of({"sqrt(2)*t^2"})).label ==
        IndependenceClass::PairwiseIndependent);
}

TEST_CASE("classification invariances and witness soundness on random families") {
  std::mt19937_64 rng(20240815);
  BasisPtr base = GeneratorBasis::parse("");
  const std::vector<std::string> pool = {
      "t^(3/2)",          "t^(1/2)",      "t^2",      "t",           "sqrt(2)*t^2",
      "sqrt(3)*t",        "t^(5/4)",      "log(t)^2", "t*log(t)",    "sqrt(2)*t^(3/2)",
      "t^2 + sqrt(3)*t",  "t^3",          "2*t^2+t",  "sqrt(5)*t^3", "t^(1/2)+log(t)",
  };
  int checked_witnesses = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t ell = 1 + rng() % 3;
    std::vector<std::string> exprs;
    for (std::size_t j = 0; j < ell; ++j) exprs.push_back(pool[rng() % pool.size()]);
    auto fam = family_of(exprs);
    Classification c;
    try {
      c = classify_family(fam);
    } catch (const std::invalid_argument&) {
      continue;  // zero member after merging duplicates is fine to skip
    }
    if (c.witness) {
      CHECK(verify_witness(fam, *c.witness));
      ++checked_witnesses;
      // tier membership of the witness
      if (c.witness->violates == "IrrationallyIndependent") {
        for (std::size_t j = 0; j < fam.size(); ++j)
          if (coord_nonzero(*c.witness, j)) CHECK(coord_irrational(*c.witness, j));
      } else if (c.witness->violates == "StronglyIrrationallyIndependent") {
        bool any = false;
        for (std::size_t j = 0; j < fam.size(); ++j) any = any || coord_irrational(*c.witness, j);
        CHECK(any);
      }
    }
    // permutation invariance
    std::vector<HardyExpr> perm = fam;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(classify_family(perm).label == c.label);
    // rational scaling invariance
    std::vector<HardyExpr> scaled = fam;
    std::size_t pick = rng() % scaled.size();
    scaled[pick] = scaled[pick].mul_rational(
        rat(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3)));
    // scaling one member never strengthens/weakens independence class
    CHECK(classify_family(scaled).label == c.label);
  }
  CHECK(checked_witnesses > 50);
}

TEST_CASE("boshernitzan test") {
  auto f = family_of({"t^(3/2)", "t^2", "sqrt(2)*t^2", "log(t)^2", "t^2+log(t)", "1/3*t",
                      "exps(1,1/2)", "t^2+1/2*t"});
  CHECK(boshernitzan_test(f[0]) == true);
  CHECK(boshernitzan_test(f[1]) == false);
  CHECK(boshernitzan_test(f[2]) == true);
  CHECK(boshernitzan_test(f[3]) == true);
  CHECK(boshernitzan_test(f[4]) == false);
  CHECK(boshernitzan_test(f[5]) == false);
  CHECK(boshernitzan_test(f[6]) == true);
  CHECK(boshernitzan_test(f[7]) == false);
  CHECK(boshernitzan_witness_lambda(f[5]) == 3);
  CHECK(boshernitzan_witness_lambda(f[7]) == 2);
  CHECK(boshernitzan_witness_lambda(f[1]) == 1);
}

namespace {
// Independent oracle: the leading nonzero coefficient vector of a member
// difference in the ordering g_1..g_{m2}, t, .., t^d, g_{m2+1}..g_m.
std::vector<ScalarValue> unnatural_leading(const DecomposedFamily& d, std::size_t j1,
                                           std::size_t j2) {
  auto alpha = [&](std::size_t j, std::size_t i, int c) -> ScalarValue {
    return j == 0 ? ScalarValue() : d.alpha[j - 1][i][static_cast<std::size_t>(c)];
  };
  auto beta = [&](std::size_t j, std::size_t p, int c) -> ScalarValue {
    return j == 0 ? ScalarValue() : d.beta[j - 1][p][static_cast<std::size_t>(c)];
  };
  auto diff_alpha = [&](std::size_t i) {
    std::vector<ScalarValue> v;
    bool nz = false;
    for (int c = 0; c < d.k; ++c) {
      v.push_back(alpha(j1, i, c) - alpha(j2, i, c));
      if (!v.back().is_zero()) nz = true;
    }
    return nz ? std::optional(v) : std::nullopt;
  };
  auto diff_beta = [&](std::size_t p) {
    std::vector<ScalarValue> v;
    bool nz = false;
    for (int c = 0; c < d.k; ++c) {
      v.push_back(beta(j1, p, c) - beta(j2, p, c));
      if (!v.back().is_zero()) nz = true;
    }
    return nz ? std::optional(v) : std::nullopt;
  };
  // scan the ordering from the top
  for (std::size_t i = d.generators.size(); i > static_cast<std::size_t>(d.m2); --i)
    if (auto v = diff_alpha(i - 1)) return *v;
  for (int p = d.degree; p >= 1; --p)
    if (auto v = diff_beta(static_cast<std::size_t>(p))) return *v;
  for (std::size_t i = static_cast<std::size_t>(d.m2); i > 0; --i)
    if (auto v = diff_alpha(i - 1)) return *v;
  throw std::runtime_error("no leading vector");
}
}  // namespace

TEST_CASE("predicted directions: linear pair on two transformations") {
  BasisBuilder bb;
  std::vector<HardyExpr> fam = {parse_expr("sqrt(2)*t", bb), parse_expr("sqrt(3)*t", bb)};
  auto ds = predicted_directions(fam, {1, 2}, 2);
  REQUIRE(ds.vectors.size() == 2);
  // {sqrt2 e1, sqrt2 e1 - sqrt3 e2}
  CHECK(ds.vectors[0][0].str() == "sqrt2");
  CHECK(ds.vectors[0][1].is_zero());
  CHECK(ds.vectors[1][0].str() == "sqrt2");
  CHECK(ds.vectors[1][1].str() == "-sqrt3");
}

TEST_CASE("predicted directions: fractional pair, cross-checked by extractor") {
  BasisBuilder bb;
  std::vector<HardyExpr> fam = {parse_expr("t^(3/2)", bb), parse_expr("t^(3/2)+t^(1/2)", bb)};
  auto ds = predicted_directions(fam, {1, 2}, 2);
  REQUIRE(ds.vectors.size() == 2);
  CHECK(ds.vectors[0][0].rational_part() == 1);  // e1 from the j=0 comparison
  CHECK(ds.vectors[0][1].is_zero());
  CHECK(ds.vectors[1][0].rational_part() == 1);  // e1 - e2 from j=2
  CHECK(ds.vectors[1][1].rational_part() == -1);

  // oracle: re-derive both vectors with the independent leading-term extractor
  BasisPtr basis = fam[0].basis() ? fam[0].basis() : GeneratorBasis::unit_only();
  std::vector<std::vector<HardyExpr>> vec = {
      {fam[0], HardyExpr(basis)}, {HardyExpr(basis), fam[1]}};
  auto d = decompose_family(vec);
  auto v0 = unnatural_leading(d, 1, 0);
  auto v2 = unnatural_leading(d, 1, 2);
  CHECK(v0[0] == ds.vectors[0][0]);
  CHECK(v0[1] == ds.vectors[0][1]);
  CHECK(v2[0] == ds.vectors[1][0]);
  CHECK(v2[1] == ds.vectors[1][1]);
}

TEST_CASE("predicted directions: degenerate pair rejected") {
  BasisBuilder bb;
  std::vector<HardyExpr> fam = {parse_expr("t^(3/2)", bb), parse_expr("t^(3/2)", bb)};
  CHECK_THROWS_AS(predicted_directions(fam, {1, 1}, 2), DirectionError);
}

TEST_CASE("predicted directions: random families match the extractor") {
  std::mt19937_64 rng(777);
  const std::vector<std::string> pool = {"t^(3/2)", "t^(1/2)", "t^2",       "sqrt(2)*t",
                                         "t^(5/4)", "t^3",     "sqrt(3)*t^2", "log(t)^2"};
  int done = 0;
  for (int trial = 0; trial < 200 && done < 120; ++trial) {
    std::size_t ell = 1 + rng() % 3;
    int k = 1 + static_cast<int>(rng() % 2);
    BasisBuilder bb;
    std::vector<HardyExpr> fam;
    std::vector<int> eta;
    for (std::size_t j = 0; j < ell; ++j) {
      fam.push_back(parse_expr(pool[rng() % pool.size()], bb));
      eta.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(k)));
    }
    DirectionSet ds;
    try {
      ds = predicted_directions(fam, eta, k);
    } catch (const DirectionError&) {
      continue;
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++done;
    // every vector nonzero
    for (const auto& v : ds.vectors) {
      bool nz = false;
      for (const auto& x : v)
        if (!x.is_zero()) nz = true;
      CHECK(nz);
    }
    // re-derive with the extractor
    BasisPtr basis = bb.freeze();
    std::vector<std::vector<HardyExpr>> vec;
    for (std::size_t j = 0; j < ell; ++j) {
      std::vector<HardyExpr> member(static_cast<std::size_t>(k), HardyExpr(basis));
      std::vector<Term> ts;
      for (const Term& t : fam[j].terms())
        ts.push_back(Term{rebase(t.coeff, basis), t.c, t.e, t.atom});
      member[static_cast<std::size_t>(eta[j] - 1)] = HardyExpr::from_terms(basis, ts);
      vec.push_back(member);
    }
    auto d = decompose_family(vec);
    std::vector<std::vector<ScalarValue>> expect;
    auto push_unique = [&](std::vector<ScalarValue> v) {
      for (const auto& u : expect) {
        bool same = true;
        for (std::size_t c = 0; c < v.size(); ++c)
          if (!(u[c] == v[c])) same = false;
        if (same) return;
      }
      expect.push_back(std::move(v));
    };
    for (std::size_t j = 0; j <= ell; ++j) {
      if (j == 1) continue;
      push_unique(unnatural_leading(d, 1, j));
    }
    REQUIRE(ds.vectors.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
      for (std::size_t c = 0; c < expect[i].size(); ++c) CHECK(ds.vectors[i][c] == expect[i][c]);
  }
  CHECK(done >= 120);
}
