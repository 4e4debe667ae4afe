#include <map>
#include <random>

#include "doctest.h"
#include "hardyergo/pet.hpp"

using namespace hardy;
using namespace hardy::pet;

namespace {

BasisPtr unit_basis() { return GeneratorBasis::unit_only(); }

// scalar polynomial from coefficients by n-power (index = power), k = 1
MultiPoly scalar_poly(const std::vector<Rational>& by_power) {
  MultiPoly p(1, 0);
  for (std::size_t i = 0; i < by_power.size(); ++i)
    if (sgn(by_power[i]) != 0)
      p.add(MonoKey{static_cast<int>(i), {}}, {ScalarValue(unit_basis(), by_power[i])});
  return p;
}

// ---- independent brute-force oracle --------------------------------------
// Dense exponent-vector polynomials over Q (k = 1): exps = (n, h1, .., hs).
using OraclePoly = std::map<std::vector<int>, Rational>;

OraclePoly oracle_from(const MultiPoly& p) {
  OraclePoly out;
  for (const auto& [key, v] : p.coeffs()) {
    std::vector<int> e;
    e.push_back(key.npow);
    for (int x : key.hexp) e.push_back(x);
    Rational q = v[0].rational_part();
    if (sgn(q) != 0) out[e] = q;
  }
  return out;
}

void oracle_add(OraclePoly& a, const std::vector<int>& e, const Rational& q) {
  auto it = a.find(e);
  if (it == a.end()) {
    if (sgn(q) != 0) a[e] = q;
    return;
  }
  it->second += q;
  if (sgn(it->second) == 0) a.erase(it);
}

OraclePoly oracle_pad(const OraclePoly& a, std::size_t vars) {
  OraclePoly out;
  for (const auto& [e0, q] : a) {
    std::vector<int> e = e0;
    e.resize(vars, 0);
    oracle_add(out, e, q);
  }
  return out;
}

OraclePoly oracle_sub(const OraclePoly& a, const OraclePoly& b) {
  OraclePoly out = a;
  for (const auto& [e, q] : b) oracle_add(out, e, -q);
  return out;
}

// substitute n -> n + h_last and subtract the n = 0 slice
OraclePoly oracle_sigma(const OraclePoly& a, std::size_t vars_with_new) {
  OraclePoly shifted;
  for (const auto& [e0, q] : a) {
    std::vector<int> e = e0;
    e.resize(vars_with_new, 0);
    int p = e[0];
    std::vector<Integer> binom(static_cast<std::size_t>(p) + 1, Integer(1));
    for (int i = 1; i <= p; ++i)
      for (int j = i - 1; j >= 1; --j)
        binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j - 1)];
    for (int r = 0; r <= p; ++r) {
      std::vector<int> ne = e;
      ne[0] = r;
      ne[vars_with_new - 1] += p - r;
      oracle_add(shifted, ne, q * Rational(binom[static_cast<std::size_t>(r)]));
    }
  }
  OraclePoly out;
  for (const auto& [e, q] : shifted)
    if (e[0] != 0) oracle_add(out, e, q);
  return out;
}

OraclePoly oracle_drop_const(const OraclePoly& a) {
  OraclePoly out;
  for (const auto& [e, q] : a)
    if (e[0] != 0) oracle_add(out, e, q);
  return out;
}

std::vector<OraclePoly> oracle_vdc(const std::vector<OraclePoly>& qs, std::size_t m,
                                   std::size_t vars_new) {
  std::vector<OraclePoly> raw;
  OraclePoly qm = oracle_pad(qs[m - 1], vars_new);
  for (const auto& q : qs) raw.push_back(oracle_sub(oracle_sigma(q, vars_new), qm));
  for (const auto& q : qs) raw.push_back(oracle_sub(oracle_pad(q, vars_new), qm));
  std::vector<OraclePoly> out;
  for (auto& q : raw) {
    OraclePoly clean = oracle_drop_const(q);
    if (clean.empty()) continue;
    bool dup = false;
    for (const auto& e : out)
      if (e == clean) dup = true;
    if (!dup) out.push_back(clean);
  }
  return out;
}

PolyFamily initial_family(const std::vector<MultiPoly>& polys) {
  PolyFamily fam;
  fam.s1 = 0;
  for (const auto& p : polys) fam.polys.push_back(p.drop_n_constant());
  fam.prov.base[UIndex{}] = 0;
  for (std::size_t j = 0; j < polys.size(); ++j)
    fam.prov.member.push_back({{UIndex{}, static_cast<int>(j + 1)}});
  return fam;
}

OriginalFamily original_of(const std::vector<MultiPoly>& polys) {
  OriginalFamily p;
  for (const auto& q : polys) p.polys.push_back(q.drop_n_constant());
  p.k = polys[0].k();
  p.degree = 0;
  for (const auto& q : polys) p.degree = std::max(p.degree, q.degree_n());
  return p;
}

}  // namespace

TEST_CASE("vdc_op on simple families") {
  // Q = {n^2}, m = 1 -> {2hn}
  auto p1 = scalar_poly({Rational(0), Rational(0), Rational(1)});
  auto fam = initial_family({p1});
  auto orig = original_of({p1});
  auto out = vdc_op(fam, orig, 1);
  REQUIRE(out.polys.size() == 1);
  CHECK(out.polys[0].degree_n() == 1);
  CHECK(out.polys[0].coeff(MonoKey{1, {1}})[0].rational_part() == 2);

  // Q = {n, 2n}, m = 1: sigma n - n = 0 is dropped; {n} remains
  auto q1 = scalar_poly({Rational(0), Rational(1)});
  auto q2 = scalar_poly({Rational(0), Rational(2)});
  auto fam2 = initial_family({q1, q2});
  auto orig2 = original_of({q1, q2});
  auto out2 = vdc_op(fam2, orig2, 1);
  REQUIRE(out2.polys.size() == 1);
  CHECK(out2.polys[0].coeff(MonoKey{1, {0}})[0].rational_part() == 1);
}

TEST_CASE("vdc_op matches the brute-force oracle on random families") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t ell = 1 + rng() % 3;
    int deg = 1 + static_cast<int>(rng() % 3);
    std::vector<MultiPoly> polys;
    std::vector<OraclePoly> oracle;
    for (std::size_t j = 0; j < ell; ++j) {
      std::vector<Rational> coeffs(static_cast<std::size_t>(deg) + 1, Rational(0));
      for (int i = 1; i <= deg; ++i)
        coeffs[static_cast<std::size_t>(i)] = Rational(static_cast<long>(rng() % 5) - 2);
      polys.push_back(scalar_poly(coeffs));
    }
    bool any_zero = false;
    for (const auto& p : polys)
      if (p.is_zero()) any_zero = true;
    if (any_zero) continue;
    for (const auto& p : polys) oracle.push_back(oracle_from(p));
    auto fam = initial_family(polys);
    auto orig = original_of(polys);
    std::size_t m = 1 + rng() % ell;
    auto engine = vdc_op(fam, orig, m);
    auto expect = oracle_vdc(oracle, m, 2);
    REQUIRE(engine.polys.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
      CHECK(oracle_from(engine.polys[i]) == expect[i]);
  }
}

TEST_CASE("descendence certificate: trivial, preserved, and adversarial") {
  auto p1 = scalar_poly({Rational(0), Rational(1), Rational(1)});  // n^2 + n
  auto p2 = scalar_poly({Rational(0), Rational(2)});               // 2n
  auto fam = initial_family({p1, p2});
  auto orig = original_of({p1, p2});
  CHECK(check_descendence(fam, orig).ok);

  auto step = vdc_op(fam, orig, select_m(fam, orig));
  CHECK(check_descendence(step, orig).ok);

  // planted violation: inject a non-multilinear monomial into q_1
  PolyFamily bad = step;
  MonoKey key{1, std::vector<int>(static_cast<std::size_t>(bad.s1), 0)};
  key.hexp[0] = 2;
  MultiPoly add_on(1, bad.s1);
  add_on.add(key, {ScalarValue(unit_basis(), Rational(1))});
  bad.polys[0] = bad.polys[0] - add_on;
  auto rep = check_descendence(bad, orig);
  CHECK(!rep.ok);
  CHECK((rep.violated_clause == "reconstruction" || rep.violated_clause == "multilinearity"));
}

TEST_CASE("run_pet fixtures") {
  // single linear member: zero steps, c_1 = alpha
  BasisBuilder bb;
  bb.add_sqrt(2);
  BasisPtr basis = bb.freeze();
  MultiPoly lin(1, 0);
  lin.add(MonoKey{1, {}}, {ScalarValue::generator(basis, 1)});
  auto r = run_pet({lin}, 4);
  CHECK(r.s1 == 0);
  CHECK(r.s2 == 1);
  REQUIRE(r.control.size() == 1);
  CHECK(r.control[0].coeff(MonoKey{0, {}})[0].str() == "sqrt2");

  // {n, 2n, 3n} -> directions {v, -2v, -v}
  auto q1 = scalar_poly({Rational(0), Rational(1)});
  auto q2 = scalar_poly({Rational(0), Rational(2)});
  auto q3 = scalar_poly({Rational(0), Rational(3)});
  auto r2 = run_pet({q1, q2, q3}, 4);
  CHECK(r2.s1 == 0);
  CHECK(r2.s2 == 3);
  REQUIRE(r2.control.size() == 3);
  CHECK(r2.control[0].coeff(MonoKey{0, {}})[0].rational_part() == 1);
  CHECK(r2.control[1].coeff(MonoKey{0, {}})[0].rational_part() == -2);
  CHECK(r2.control[2].coeff(MonoKey{0, {}})[0].rational_part() == -1);

  // {n^2} -> one step, c_1 = 2h
  auto s = run_pet({scalar_poly({Rational(0), Rational(0), Rational(1)})}, 4);
  CHECK(s.s1 == 1);
  CHECK(s.s2 == 1);
  REQUIRE(s.control.size() == 1);
  CHECK(s.control[0].coeff(MonoKey{0, {1}})[0].rational_part() == 2);
  // coefficient 2 = (|u|+1)! for |u| = 1, with provenance w = 0
  auto w = control_provenance(s, 0, UIndex{1});
  REQUIRE(w.has_value());
  CHECK(*w == 0);
}

TEST_CASE("run_pet rejects degenerate input") {
  auto q1 = scalar_poly({Rational(0), Rational(1)});
  CHECK_THROWS_AS(run_pet({q1, q1}, 4), PetError);
  CHECK_THROWS_AS(run_pet({scalar_poly({Rational(3)})}, 4), PetError);
}

namespace {
Rational multinomial_test(const UIndex& u, int i) {
  int s = i;
  for (int e : u) s += e;
  Integer num = factorial(static_cast<unsigned long>(s));
  Integer den = factorial(static_cast<unsigned long>(i));
  for (int e : u) den *= factorial(static_cast<unsigned long>(e));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Exhaustive control-polynomial oracle from provenance and original betas.
void check_controls_against_provenance(const PetResult& r) {
  for (std::size_t cj = 0; cj < r.control.size(); ++cj) {
    const MultiPoly& c = r.control[cj];
    CHECK(c.multilinear_in_h());
    for (const auto& [key, vec] : c.coeffs()) {
      UIndex u = key.hexp;
      auto w = control_provenance(r, cj, u);
      REQUIRE(w.has_value());
      int slot = 1;
      for (int e : u) slot += e;
      auto b1 = r.original.beta(1, slot);
      auto bw = r.original.beta(static_cast<std::size_t>(*w), slot);
      Rational mult = multinomial_test(u, 1);
      bool nonzero = false;
      for (std::size_t coord = 0; coord < vec.size(); ++coord) {
        ScalarValue expect = (b1[coord] - bw[coord]).mul_rational(mult);
        CHECK(vec[coord] == expect);
        if (!vec[coord].is_zero()) nonzero = true;
      }
      CHECK(nonzero);
      int lead = 0;
      for (int i = r.original.degree; i >= 1; --i) {
        bool nz = false;
        auto bi1 = r.original.beta(1, i);
        auto biw = r.original.beta(static_cast<std::size_t>(*w), i);
        for (std::size_t coord = 0; coord < bi1.size(); ++coord)
          if (!(bi1[coord] == biw[coord])) nz = true;
        if (nz) {
          lead = i;
          break;
        }
      }
      CHECK(lead == slot);
    }
  }
}
}  // namespace

TEST_CASE("run_pet structural suite on random normal families") {
  std::mt19937_64 rng(987654);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 50; ++trial) {
    int k = 1 + static_cast<int>(rng() % 2);
    std::size_t ell = 1 + rng() % 3;
    int deg = 1 + static_cast<int>(rng() % 3);
    std::vector<MultiPoly> polys;
    for (std::size_t j = 0; j < ell; ++j) {
      MultiPoly p(k, 0);
      for (int i = 1; i <= deg; ++i) {
        std::vector<ScalarValue> v;
        for (int c = 0; c < k; ++c)
          v.push_back(ScalarValue(unit_basis(), Rational(static_cast<long>(rng() % 7) - 3)));
        p.add(MonoKey{i, {}}, v);
      }
      polys.push_back(p);
    }
    PetResult r;
    try {
      r = run_pet(polys, 4);
    } catch (const PetError&) {
      continue;
    }
    ++done;
    CHECK(r.steps.size() <= 4096);
    for (const auto& st : r.steps) CHECK(check_descendence(st.family, r.original).ok);
    check_controls_against_provenance(r);
  }
  CHECK(done >= 50);
}

TEST_CASE("schedule and s1, s2 are independent of the embedding dimension") {
  std::mt19937_64 rng(13579);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t ell = 1 + rng() % 3;
    int deg = 2 + static_cast<int>(rng() % 2);
    std::vector<std::vector<Rational>> scalar_coeffs;
    for (std::size_t j = 0; j < ell; ++j) {
      std::vector<Rational> c(static_cast<std::size_t>(deg) + 1, Rational(0));
      for (int i = 1; i <= deg; ++i)
        c[static_cast<std::size_t>(i)] = Rational(static_cast<long>(rng() % 5) - 2);
      scalar_coeffs.push_back(c);
    }
    std::vector<int> s1s, s2s;
    std::vector<std::vector<std::size_t>> schedules;
    bool failed = false;
    for (int k = 1; k <= 3; ++k) {
      std::vector<MultiPoly> polys;
      for (std::size_t j = 0; j < ell; ++j) {
        MultiPoly p(k, 0);
        for (int i = 1; i <= deg; ++i) {
          if (sgn(scalar_coeffs[j][static_cast<std::size_t>(i)]) == 0) continue;
          std::vector<ScalarValue> v(static_cast<std::size_t>(k), ScalarValue());
          v[0] = ScalarValue(unit_basis(), scalar_coeffs[j][static_cast<std::size_t>(i)]);
          p.add(MonoKey{i, {}}, v);
        }
        if (p.is_zero()) {
          failed = true;
          break;
        }
        polys.push_back(p);
      }
      if (failed) break;
      try {
        auto r = run_pet(polys, 4);
        s1s.push_back(r.s1);
        s2s.push_back(r.s2);
        std::vector<std::size_t> sched;
        for (const auto& st : r.steps) sched.push_back(st.m);
        schedules.push_back(sched);
      } catch (const PetError&) {
        failed = true;
      }
    }
    if (failed || s1s.empty()) continue;
    for (std::size_t i = 1; i < s1s.size(); ++i) {
      CHECK(s1s[i] == s1s[0]);
      CHECK(s2s[i] == s2s[0]);
      CHECK(schedules[i] == schedules[0]);
    }
  }
}
