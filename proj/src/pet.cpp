#include "hardyergo/pet.hpp"

#include <algorithm>
#include <sstream>

namespace hardy::pet {

namespace {
int usum(const UIndex& u) {
  int s = 0;
  for (int e : u) s += e;
  return s;
}

Rational multinomial(const UIndex& u, int i) {
  // (|u| + i)! / (u_1! ... u_s! i!)
  Integer num = factorial(static_cast<unsigned long>(usum(u) + i));
  Integer den = factorial(static_cast<unsigned long>(i));
  for (int e : u) den *= factorial(static_cast<unsigned long>(e));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool vec_zero(const std::vector<ScalarValue>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<ScalarValue> vec_sub(const std::vector<ScalarValue>& a,
                                 const std::vector<ScalarValue>& b) {
  std::vector<ScalarValue> r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
  return r;
}
}  // namespace

void MultiPoly::add(const MonoKey& key, const std::vector<ScalarValue>& v) {
  if (static_cast<int>(key.hexp.size()) != s1_)
    throw std::invalid_argument("MultiPoly::add: wrong h arity");
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) {
    if (!vec_zero(v)) coeffs_[key] = v;
    return;
  }
  for (std::size_t i = 0; i < v.size(); ++i) it->second[i] = it->second[i] + v[i];
  if (vec_zero(it->second)) coeffs_.erase(it);
}

std::vector<ScalarValue> MultiPoly::coeff(const MonoKey& key) const {
  auto it = coeffs_.find(key);
  if (it != coeffs_.end()) return it->second;
  return std::vector<ScalarValue>(static_cast<std::size_t>(k_), ScalarValue());
}

int MultiPoly::degree_n() const {
  int d = 0;
  for (const auto& [key, v] : coeffs_) d = std::max(d, key.npow);
  return d;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& [key, v] : o.coeffs_) {
    std::vector<ScalarValue> neg;
    for (const auto& x : v) neg.push_back(-x);
    r.add(key, neg);
  }
  return r;
}

MultiPoly MultiPoly::sigma_shift() const {
  MultiPoly r(k_, s1_ + 1);
  for (const auto& [key, v] : coeffs_) {
    // (n + h')^p -> sum_{j>=1} C(p,j) n^j h'^{p-j}; the j = 0 part cancels
    // against q(h', h).
    for (int j = 1; j <= key.npow; ++j) {
      Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(key.npow),
                   static_cast<unsigned long>(j));
      MonoKey nk;
      nk.npow = j;
      nk.hexp = key.hexp;
      nk.hexp.push_back(key.npow - j);
      std::vector<ScalarValue> scaled;
      for (const auto& x : v) scaled.push_back(x.mul_rational(Rational(binom)));
      r.add(nk, scaled);
    }
  }
  return r;
}

MultiPoly MultiPoly::lift() const {
  MultiPoly r(k_, s1_ + 1);
  for (const auto& [key, v] : coeffs_) {
    MonoKey nk = key;
    nk.hexp.push_back(0);
    r.add(nk, v);
  }
  return r;
}

MultiPoly MultiPoly::drop_n_constant() const {
  MultiPoly r(k_, s1_);
  for (const auto& [key, v] : coeffs_)
    if (key.npow > 0) r.add(key, v);
  return r;
}

MultiPoly MultiPoly::n_coefficient(int p) const {
  MultiPoly r(k_, s1_);
  for (const auto& [key, v] : coeffs_)
    if (key.npow == p) {
      MonoKey nk = key;
      nk.npow = 0;
      r.add(nk, v);
    }
  return r;
}

bool MultiPoly::multilinear_in_h() const {
  for (const auto& [key, v] : coeffs_)
    for (int e : key.hexp)
      if (e > 1) return false;
  return true;
}

std::string MultiPoly::str(int coord) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, v] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(";
    bool inner_first = true;
    for (int c = 0; c < k_; ++c) {
      if (coord >= 0 && c != coord) continue;
      if (!inner_first) os << ",";
      inner_first = false;
      os << v[static_cast<std::size_t>(c)].str();
    }
    os << ")";
    if (key.npow > 0) os << "*n" << (key.npow > 1 ? "^" + std::to_string(key.npow) : "");
    for (std::size_t i = 0; i < key.hexp.size(); ++i)
      if (key.hexp[i] > 0)
        os << "*h" << i + 1 << (key.hexp[i] > 1 ? "^" + std::to_string(key.hexp[i]) : "");
  }
  return os.str();
}

std::vector<ScalarValue> OriginalFamily::beta(std::size_t j, int i) const {
  if (j == 0 || i > degree || i < 0)
    return std::vector<ScalarValue>(static_cast<std::size_t>(k), ScalarValue());
  MonoKey key;
  key.npow = i;
  return polys[j - 1].coeff(key);
}

PolyFamily vdc_op(const PolyFamily& q, const OriginalFamily& p, std::size_t m) {
  if (m < 1 || m > q.polys.size()) throw PetError("vdc_op: member index out of range");
  const MultiPoly& qm = q.polys[m - 1];
  MultiPoly qm_l = qm.lift();

  PolyFamily out;
  out.s1 = q.s1 + 1;

  struct Raw {
    MultiPoly poly;
    int src;      // source member, 1-based
    bool sigma;   // sigma-shifted member or plain difference
  };
  std::vector<Raw> raw;
  for (std::size_t j = 0; j < q.polys.size(); ++j)
    raw.push_back({(q.polys[j].sigma_shift() - qm_l).drop_n_constant(),
                   static_cast<int>(j + 1), true});
  for (std::size_t j = 0; j < q.polys.size(); ++j)
    raw.push_back({(q.polys[j].lift() - qm_l).drop_n_constant(), static_cast<int>(j + 1), false});

  // Provenance lift.  The new shared base takes w_{m,u} at h'-exponent 0 and
  // the old base elsewhere.  Sigma-shifted members carry w_{j,u} at every
  // h'-exponent; plain differences have no h' dependence, so their index at
  // positive exponents must coincide with the old base for the coefficient
  // formula to produce zero there.
  int d = p.degree;
  enum class LiftKind { Base, Sigma, Plain };
  auto lift_map = [&](const std::map<UIndex, int>& src, LiftKind kind) {
    std::map<UIndex, int> dst;
    for (const auto& [u, w] : src) {
      int cap = d - usum(u);
      for (int v = 0; v <= cap; ++v) {
        UIndex nu = u;
        nu.push_back(v);
        switch (kind) {
          case LiftKind::Base:
            dst[nu] = v == 0 ? q.prov.member[m - 1].at(u) : w;
            break;
          case LiftKind::Sigma:
            dst[nu] = w;
            break;
          case LiftKind::Plain:
            dst[nu] = v == 0 ? w : q.prov.base.at(u);
            break;
        }
      }
    }
    return dst;
  };
  out.prov.base = lift_map(q.prov.base, LiftKind::Base);

  for (auto& r : raw) {
    if (r.poly.is_zero()) continue;
    bool dup = false;
    for (const auto& existing : out.polys)
      if (existing == r.poly) dup = true;
    if (dup) continue;
    out.polys.push_back(std::move(r.poly));
    out.prov.member.push_back(lift_map(q.prov.member[static_cast<std::size_t>(r.src - 1)],
                                       r.sigma ? LiftKind::Sigma : LiftKind::Plain));
  }
  return out;
}

DescendenceReport check_descendence(const PolyFamily& q, const OriginalFamily& p) {
  DescendenceReport rep;
  auto fail = [&](std::string clause, int j, UIndex u, std::string detail) {
    rep.ok = false;
    rep.violated_clause = std::move(clause);
    rep.j = j;
    rep.u = std::move(u);
    rep.detail = std::move(detail);
    return rep;
  };
  int d = p.degree;
  int s2 = static_cast<int>(q.polys.size());
  if (s2 == 0) return fail("reconstruction", 0, {}, "empty family");

  // clause (i): q_1 draws all its coefficients from p_1
  for (const auto& [u, w] : q.prov.member[0])
    if (w != 1) return fail("w1", 1, u, "w_{1,u} != 1");

  // coefficient formula: q_j == sum_u multinom(u,i) (beta_{w_ju} - beta_{w_u}) h^u n^i
  for (int j = 1; j <= s2; ++j) {
    MultiPoly recon(q.polys[0].k(), q.s1);
    for (const auto& [u, wj] : q.prov.member[static_cast<std::size_t>(j - 1)]) {
      auto itb = q.prov.base.find(u);
      if (itb == q.prov.base.end()) return fail("reconstruction", j, u, "missing base index");
      int wb = itb->second;
      for (int i = 1; i + usum(u) <= d; ++i) {
        auto diff = vec_sub(p.beta(static_cast<std::size_t>(wj), usum(u) + i),
                            p.beta(static_cast<std::size_t>(wb), usum(u) + i));
        Rational mult = multinomial(u, i);
        for (auto& x : diff) x = x.mul_rational(mult);
        MonoKey key;
        key.npow = i;
        key.hexp = u;
        recon.add(key, diff);
      }
    }
    if (!(recon == q.polys[static_cast<std::size_t>(j - 1)]))
      return fail("reconstruction", j, {},
                  "coefficient formula mismatch for member " + std::to_string(j));
  }

  // clause (ii): the leading n-coefficient of q_1 - q_j is multilinear in h;
  // j = 0 covers q_1 itself.
  for (int j = 0; j <= s2; ++j) {
    if (j == 1) continue;
    MultiPoly diff = j == 0 ? q.polys[0] : q.polys[0] - q.polys[static_cast<std::size_t>(j - 1)];
    int deg = diff.degree_n();
    if (deg == 0) continue;
    if (!diff.n_coefficient(deg).multilinear_in_h())
      return fail("multilinearity", j, {}, "leading n-coefficient not multilinear");
  }

  // clause (iii): a nonzero beta_{1,(|u|+d1j)} - beta_{w_{ju},(|u|+d1j)} must
  // be the leading coefficient of p_1 - p_{w_{ju}}.
  for (int j = 2; j <= s2; ++j) {
    MultiPoly diff = q.polys[0] - q.polys[static_cast<std::size_t>(j - 1)];
    int d1j = diff.degree_n();
    for (const auto& [u, wj] : q.prov.member[static_cast<std::size_t>(j - 1)]) {
      int slot = usum(u) + d1j;
      if (slot > d) continue;
      auto v = vec_sub(p.beta(1, slot), p.beta(static_cast<std::size_t>(wj), slot));
      if (vec_zero(v)) continue;
      int lead = 0;
      for (int i = d; i >= 1; --i)
        if (!vec_zero(vec_sub(p.beta(1, i), p.beta(static_cast<std::size_t>(wj), i)))) {
          lead = i;
          break;
        }
      if (lead != slot)
        return fail("leading", j, u,
                    "beta difference at slot " + std::to_string(slot) +
                        " is not the leading coefficient of p_1 - p_w");
    }
  }
  return rep;
}

namespace {
bool family_essentially_distinct(const std::vector<MultiPoly>& polys) {
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].drop_n_constant().is_zero()) return false;
    for (std::size_t j = i + 1; j < polys.size(); ++j)
      if ((polys[i] - polys[j]).drop_n_constant().is_zero()) return false;
  }
  return true;
}
}  // namespace

std::size_t select_m(const PolyFamily& q, const OriginalFamily& p) {
  // Among admissible members, difference by the one of minimal n-degree,
  // ties broken by smallest index; admissibility is re-verified on the
  // differenced family, so correctness never rides on the heuristic.
  std::vector<std::size_t> order(q.polys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i + 1;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return q.polys[a - 1].degree_n() < q.polys[b - 1].degree_n();
  });
  for (std::size_t m : order) {
    PolyFamily fam = vdc_op(q, p, m);
    if (fam.polys.empty()) continue;
    MultiPoly first = (q.polys[0].sigma_shift() - q.polys[m - 1].lift()).drop_n_constant();
    if (first.is_zero() || !(fam.polys[0] == first)) continue;
    int deg0 = fam.polys[0].degree_n();
    bool top = true;
    for (const auto& qq : fam.polys)
      if (qq.degree_n() > deg0) top = false;
    if (!top) continue;
    if (!family_essentially_distinct(fam.polys)) continue;
    if (!check_descendence(fam, p).ok) continue;
    return m;
  }
  throw PetError("select_m: no admissible differencing member (family not normal?)");
}

PetResult run_pet(const std::vector<MultiPoly>& input, int degree_cap, std::size_t max_steps) {
  if (input.empty()) throw PetError("run_pet: empty family");
  PetResult r;
  int k = input[0].k();
  for (const auto& q : input)
    if (q.k() != k || q.s1() != 0) throw PetError("run_pet: members must live in R^k[n]");

  std::vector<MultiPoly> polys;
  for (const auto& q : input) polys.push_back(q.drop_n_constant());
  if (polys[0].is_zero()) throw PetError("run_pet: p_1 constant in n");
  for (std::size_t j = 1; j < polys.size(); ++j)
    if ((polys[0] - polys[j]).is_zero())
      throw PetError("run_pet: p_1 not essentially distinct from p_" + std::to_string(j + 1));

  // Recentering: when p_1 lacks maximal degree, compose the average with a
  // maximal-degree member; symbolically the family becomes
  // (p_1 - p_i, ..., p_ell - p_i, -p_i) with zero members removed.
  int dmax = 0;
  for (const auto& q : polys) dmax = std::max(dmax, q.degree_n());
  if (polys[0].degree_n() < dmax) {
    std::size_t pivot = 0;
    for (std::size_t j = 0; j < polys.size(); ++j)
      if (polys[j].degree_n() == dmax) {
        pivot = j;
        break;
      }
    std::vector<MultiPoly> shifted;
    MultiPoly zero(k, 0);
    for (std::size_t j = 0; j < polys.size(); ++j) {
      if (j == pivot) continue;
      shifted.push_back((polys[j] - polys[pivot]).drop_n_constant());
    }
    shifted.push_back((zero - polys[pivot]).drop_n_constant());
    polys = std::move(shifted);
    r.recentered = true;
  }

  // Duplicates (identified modulo n-free monomials) collapse to the first copy.
  std::vector<MultiPoly> dedup;
  for (const auto& q : polys) {
    bool dup = false;
    for (const auto& e : dedup)
      if (e == q) dup = true;
    if (!dup && !q.is_zero()) dedup.push_back(q);
  }
  polys = std::move(dedup);

  int deg = 0;
  for (const auto& q : polys) deg = std::max(deg, q.degree_n());
  if (deg > degree_cap) throw PetError("run_pet: degree exceeds cap");
  r.original.polys = polys;
  r.original.degree = deg;
  r.original.k = k;

  PolyFamily fam;
  fam.s1 = 0;
  fam.polys = polys;
  fam.prov.base[UIndex{}] = 0;
  for (std::size_t j = 0; j < polys.size(); ++j)
    fam.prov.member.push_back({{UIndex{}, static_cast<int>(j + 1)}});

  auto rep0 = check_descendence(fam, r.original);
  if (!rep0.ok) throw PetError("run_pet: initial family fails descendence: " + rep0.detail);

  auto all_linear = [](const PolyFamily& f) {
    for (const auto& q : f.polys)
      if (q.degree_n() > 1) return false;
    return true;
  };
  while (!all_linear(fam)) {
    if (r.steps.size() >= max_steps) {
      std::ostringstream os;
      os << "run_pet: iteration cap exceeded; family size " << fam.polys.size();
      for (const auto& q : fam.polys) os << "\n  " << q.str();
      throw PetError(os.str());
    }
    std::size_t m = select_m(fam, r.original);
    fam = vdc_op(fam, r.original, m);
    r.steps.push_back(PetStep{m, fam});
  }
  r.final_family = fam;
  r.s1 = fam.s1;
  r.s2 = static_cast<int>(fam.polys.size());

  // control polynomials: beta_11, beta_11 - beta_{s2,1}, ..., beta_11 - beta_21
  MultiPoly b11 = fam.polys[0].n_coefficient(1);
  r.control.push_back(b11);
  for (int j = r.s2; j >= 2; --j)
    r.control.push_back(b11 - fam.polys[static_cast<std::size_t>(j - 1)].n_coefficient(1));
  for (const auto& c : r.control)
    if (c.is_zero()) throw PetError("run_pet: zero control polynomial");
  return r;
}

std::optional<int> control_provenance(const PetResult& r, std::size_t cj, const UIndex& u) {
  if (cj >= r.control.size()) return std::nullopt;
  const Provenance& prov = r.final_family.prov;
  if (cj == 0) {
    auto it = prov.base.find(u);
    if (it == prov.base.end()) return std::nullopt;
    return it->second;
  }
  // c_j for j >= 1 pairs with member s2 + 1 - j (reversed emission order)
  std::size_t member = static_cast<std::size_t>(r.s2) - cj;  // 0-based
  auto it = prov.member[member].find(u);
  if (it == prov.member[member].end()) return std::nullopt;
  return it->second;
}

}  // namespace hardy::pet
