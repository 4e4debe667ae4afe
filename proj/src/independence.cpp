#include "hardyergo/independence.hpp"

#include <algorithm>
#include <set>

namespace hardy::indep {

namespace {

using Vec = std::vector<SymRatio>;
using Mat = std::vector<Vec>;

SymRatio zero_ratio() { return SymRatio(); }

// Reduced row echelon form in the fraction field; returns pivot columns.
std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    SymRatio inv = SymRatio(Rational(1)) / m[row][col];
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      SymRatio f = m[r][col];
      for (std::size_t c2 = 0; c2 < cols; ++c2) m[r][c2] = m[r][c2] - f * m[row][c2];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

std::vector<Vec> kernel_basis(Mat m, std::size_t cols) {
  for (auto& r : m) r.resize(cols, zero_ratio());
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, zero_ratio());
    v[free] = SymRatio(Rational(1));
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      v[static_cast<std::size_t>(pivots[pi])] = -m[pi][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Particular solution of m x = rhs, or nullopt when inconsistent.
std::optional<Vec> solve(Mat m, Vec rhs) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t r = 0; r < m.size(); ++r) m[r].push_back(rhs[r]);
  std::vector<int> pivots = rref(m);
  Vec x(cols, zero_ratio());
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
    if (pivots[pi] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1 row
    x[static_cast<std::size_t>(pivots[pi])] = m[pi][cols];
  }
  return x;
}

std::vector<Vec> left_null_space(const Mat& m) {
  if (m.empty()) return {};
  std::size_t rows = m.size(), cols = m[0].size();
  Mat t(cols, Vec(rows, zero_ratio()));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t[c][r] = m[r][c];
  return kernel_basis(std::move(t), rows);
}

std::vector<std::vector<Rational>> rational_kernel(std::vector<std::vector<Rational>> m,
                                                   std::size_t cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (auto& r : m) r.resize(cols, Rational(0));
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = Rational(1) / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c2 = 0; c2 < cols; ++c2) m[r][c2] -= f * m[row][c2];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      v[static_cast<std::size_t>(pivots[pi])] = -m[pi][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---- per-tier linear system ---------------------------------------------

struct TierSystem {
  std::size_t ell = 0;
  std::vector<int> cols;                      // active member indices
  std::vector<Vec> W;                         // kernel basis of the vanishing rows
  Mat lambda;                                 // sigma composed with W  (K x r)
  std::vector<Vec> S0;                        // kernel of lambda, in W-coordinates
  std::vector<std::vector<Rational>> Pbasis;  // rational rho with lambda t = rho solvable
  std::vector<Vec> particular;                // t-solution per Pbasis vector
  std::size_t K = 0;
};

Vec expand_on_cols(const std::vector<Vec>& W, const Vec& coords, std::size_t ell,
                   const std::vector<int>& cols) {
  Vec full(ell, zero_ratio());
  for (std::size_t b = 0; b < W.size(); ++b)
    for (std::size_t i = 0; i < cols.size(); ++i)
      full[static_cast<std::size_t>(cols[i])] =
          full[static_cast<std::size_t>(cols[i])] + W[b][i] * coords[b];
  return full;
}

TierSystem build_tier_system(const DecomposedFamily& d, const std::vector<int>& cols,
                             bool polynomials_vanish) {
  TierSystem sys;
  sys.ell = d.ell;
  sys.cols = cols;

  Mat vanish;
  for (std::size_t i = static_cast<std::size_t>(d.m1); i < d.generators.size(); ++i) {
    Vec row;
    for (int j : cols)
      row.push_back(SymRatio(SymReal::from_scalar(d.alpha[static_cast<std::size_t>(j)][i][0])));
    vanish.push_back(std::move(row));
  }

  Mat sigma;
  for (int p = 1; p <= d.degree; ++p) {
    Vec row;
    for (int j : cols)
      row.push_back(SymRatio(SymReal::from_scalar(
          d.beta[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)][0])));
    if (polynomials_vanish)
      vanish.push_back(std::move(row));
    else
      sigma.push_back(std::move(row));
  }
  sys.K = sigma.size();

  sys.W = kernel_basis(vanish, cols.size());
  std::size_t r = sys.W.size();

  sys.lambda.assign(sigma.size(), Vec(r, zero_ratio()));
  for (std::size_t k = 0; k < sigma.size(); ++k)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < cols.size(); ++i)
        sys.lambda[k][b] = sys.lambda[k][b] + sigma[k][i] * sys.W[b][i];

  sys.S0 = kernel_basis(sys.lambda, r);

  if (sys.K > 0 && r > 0) {
    // Rational rho for which lambda t = rho is solvable: expand the
    // left-null-space conditions u^T rho = 0 over the monomial basis; with
    // rational rho each monomial coordinate must vanish separately.
    std::vector<Vec> lns = left_null_space(sys.lambda);
    std::vector<std::vector<Rational>> conditions;
    for (const Vec& u : lns) {
      std::vector<SymReal> cleared;
      for (std::size_t k = 0; k < u.size(); ++k) {
        SymReal others(Rational(1));
        for (std::size_t k2 = 0; k2 < u.size(); ++k2)
          if (k2 != k) others = others * u[k2].den();
        cleared.push_back(u[k].num() * others);
      }
      std::set<SymMonomial> monoms;
      for (const auto& e : cleared)
        for (const auto& [mk, q] : e.terms()) monoms.insert(mk);
      for (const auto& mk : monoms) {
        std::vector<Rational> row;
        for (const auto& e : cleared) {
          auto it = e.terms().find(mk);
          row.push_back(it == e.terms().end() ? Rational(0) : it->second);
        }
        conditions.push_back(std::move(row));
      }
    }
    sys.Pbasis = rational_kernel(std::move(conditions), sys.K);
    for (const auto& rho : sys.Pbasis) {
      Vec rhs;
      for (const Rational& q : rho) rhs.push_back(SymRatio(q));
      auto t = solve(sys.lambda, rhs);
      if (!t) throw std::logic_error("independence: inconsistent particular solve");
      sys.particular.push_back(*t);
    }
  }
  return sys;
}

std::vector<int> all_cols(std::size_t ell) {
  std::vector<int> c(ell);
  for (std::size_t i = 0; i < ell; ++i) c[i] = static_cast<int>(i);
  return c;
}

Vec c_of_theta(const TierSystem& sys, const std::vector<Rational>& theta) {
  Vec c(sys.ell, zero_ratio());
  for (std::size_t b = 0; b < sys.particular.size(); ++b) {
    Vec cb = expand_on_cols(sys.W, sys.particular[b], sys.ell, sys.cols);
    for (std::size_t j = 0; j < sys.ell; ++j) c[j] = c[j] + cb[j].mul_rational(theta[b]);
  }
  return c;
}

std::vector<Rational> rho_of_theta(const TierSystem& sys, const std::vector<Rational>& theta) {
  std::vector<Rational> rho(sys.K, Rational(0));
  for (std::size_t b = 0; b < sys.Pbasis.size(); ++b)
    for (std::size_t k = 0; k < sys.K; ++k) rho[k] += theta[b] * sys.Pbasis[b][k];
  return rho;
}

std::vector<Rational> vandermonde_theta(std::size_t dim, long m) {
  std::vector<Rational> t(dim);
  Rational acc(1);
  for (std::size_t i = 0; i < dim; ++i) {
    t[i] = acc;
    acc *= m;
  }
  return t;
}

// rho is indexed by sigma row (power 1..degree); p[0] stays 0.
std::vector<Rational> pad_poly(const std::vector<Rational>& rho, int degree) {
  std::vector<Rational> out(static_cast<std::size_t>(degree) + 1, Rational(0));
  for (std::size_t k = 0; k < rho.size() && k + 1 < out.size(); ++k) out[k + 1] = rho[k];
  return out;
}

Witness make_witness(Vec c_f, Vec c_xi, std::vector<Rational> p, std::string tier) {
  Witness w;
  w.c_f = std::move(c_f);
  w.c_xi = std::move(c_xi);
  w.p = std::move(p);
  w.violates = std::move(tier);
  return w;
}

// Violation of strong independence: any nonzero real c with every fast
// monomial cancelled and all polynomial coefficients rational.
std::optional<Witness> violation_strong(const TierSystem& sys, int degree) {
  if (!sys.S0.empty())
    return make_witness(expand_on_cols(sys.W, sys.S0[0], sys.ell, sys.cols),
                        Vec(sys.ell, zero_ratio()), pad_poly({}, degree), "StronglyIndependent");
  if (sys.K == 0 && !sys.W.empty()) {
    Vec coords(sys.W.size(), zero_ratio());
    coords[0] = SymRatio(Rational(1));
    return make_witness(expand_on_cols(sys.W, coords, sys.ell, sys.cols),
                        Vec(sys.ell, zero_ratio()), pad_poly({}, degree), "StronglyIndependent");
  }
  if (!sys.Pbasis.empty()) {
    std::vector<Rational> theta(sys.Pbasis.size(), Rational(0));
    theta[0] = 1;
    return make_witness(c_of_theta(sys, theta), Vec(sys.ell, zero_ratio()),
                        pad_poly(rho_of_theta(sys, theta), degree), "StronglyIndependent");
  }
  return std::nullopt;
}

// Violation with at least one irrational coordinate.
std::optional<Witness> violation_strong_irrational(const TierSystem& sys, int degree) {
  if (!sys.S0.empty() || (sys.K == 0 && !sys.W.empty())) {
    // A kernel direction scaled by an arbitrary irrational xi: sigma(c) = 0.
    Vec coords(sys.W.size(), zero_ratio());
    if (!sys.S0.empty()) {
      Vec c_xi = expand_on_cols(sys.W, sys.S0[0], sys.ell, sys.cols);
      return make_witness(Vec(sys.ell, zero_ratio()), std::move(c_xi), pad_poly({}, degree),
                          "StronglyIrrationallyIndependent");
    }
    coords[0] = SymRatio(Rational(1));
    Vec c_xi = expand_on_cols(sys.W, coords, sys.ell, sys.cols);
    return make_witness(Vec(sys.ell, zero_ratio()), std::move(c_xi), pad_poly({}, degree),
                        "StronglyIrrationallyIndependent");
  }
  // Rational theta sweep: c(theta) depends Q-linearly on theta, so if any
  // theta yields an irrational coordinate, some Vandermonde theta in the
  // sweep range does too (each "coordinate rational" locus is a proper
  // rational subspace, and (1, m, m^2, ...) escapes any finite union once m
  // exceeds the number of independent conditions).
  std::size_t dim = sys.Pbasis.size();
  for (long m = 0; dim > 0 && m <= 64 * static_cast<long>(dim) + 64; ++m) {
    auto theta = vandermonde_theta(dim, m);
    Vec c = c_of_theta(sys, theta);
    bool any_irr = false, any_nonzero = false;
    for (const auto& x : c) {
      if (!x.is_zero()) any_nonzero = true;
      if (!x.is_rational()) any_irr = true;
    }
    if (any_nonzero && any_irr)
      return make_witness(std::move(c), Vec(sys.ell, zero_ratio()),
                          pad_poly(rho_of_theta(sys, theta), degree),
                          "StronglyIrrationallyIndependent");
  }
  return std::nullopt;
}

// Violation with every nonzero coordinate irrational: enumerate supports.
std::optional<Witness> violation_irrational(const DecomposedFamily& d, int degree) {
  std::size_t ell = d.ell;
  for (std::size_t mask = 1; mask < (std::size_t{1} << ell); ++mask) {
    std::vector<int> cols;
    for (std::size_t j = 0; j < ell; ++j)
      if (mask & (std::size_t{1} << j)) cols.push_back(static_cast<int>(j));
    TierSystem sys = build_tier_system(d, cols, /*polynomials_vanish=*/false);
    if (sys.W.empty()) continue;

    // xi-coverable coordinates: reachable by a sigma-null kernel direction.
    std::vector<Vec> xi_pool;
    if (sys.K == 0) {
      for (std::size_t b = 0; b < sys.W.size(); ++b) {
        Vec coords(sys.W.size(), zero_ratio());
        coords[b] = SymRatio(Rational(1));
        xi_pool.push_back(expand_on_cols(sys.W, coords, sys.ell, sys.cols));
      }
    } else {
      for (const auto& s : sys.S0)
        xi_pool.push_back(expand_on_cols(sys.W, s, sys.ell, sys.cols));
    }
    std::vector<bool> xi_coverable(ell, false);
    for (const auto& v : xi_pool)
      for (std::size_t j = 0; j < ell; ++j)
        if (!v[j].is_zero()) xi_coverable[j] = true;

    std::size_t dim = sys.Pbasis.size();
    long sweep_cap = dim > 0 ? 64 * static_cast<long>(dim) + 64 : 0;
    for (long m = 0; m <= sweep_cap; ++m) {
      auto theta = dim > 0 ? vandermonde_theta(dim, m) : std::vector<Rational>{};
      Vec c_theta = dim > 0 ? c_of_theta(sys, theta) : Vec(ell, zero_ratio());
      bool ok = true;
      for (int j : cols) {
        auto ju = static_cast<std::size_t>(j);
        if (!xi_coverable[ju] && c_theta[ju].is_rational()) ok = false;
      }
      if (!ok) continue;
      // One xi direction covering every coverable coordinate of the support.
      Vec sigma(ell, zero_ratio());
      bool sigma_ok = xi_pool.empty();
      for (long mp = 1; !xi_pool.empty() && mp <= 64 * static_cast<long>(xi_pool.size()) + 64;
           ++mp) {
        Vec cand(ell, zero_ratio());
        Rational acc(1);
        for (const auto& v : xi_pool) {
          for (std::size_t j = 0; j < ell; ++j) cand[j] = cand[j] + v[j].mul_rational(acc);
          acc *= mp;
        }
        bool covers = true;
        for (int j : cols)
          if (xi_coverable[static_cast<std::size_t>(j)] &&
              cand[static_cast<std::size_t>(j)].is_zero())
            covers = false;
        if (covers) {
          sigma = std::move(cand);
          sigma_ok = true;
          break;
        }
      }
      if (!sigma_ok) continue;
      bool all_irr = true;
      for (int j : cols) {
        auto ju = static_cast<std::size_t>(j);
        if (sigma[ju].is_zero() && c_theta[ju].is_rational()) all_irr = false;
      }
      if (!all_irr) continue;
      return make_witness(std::move(c_theta), std::move(sigma),
                          pad_poly(dim > 0 ? rho_of_theta(sys, theta) : std::vector<Rational>{},
                                   degree),
                          "IrrationallyIndependent");
    }
  }
  return std::nullopt;
}

std::optional<Witness> violation_pairwise(const DecomposedFamily& d, int degree) {
  for (std::size_t i = 0; i < d.ell; ++i)
    for (std::size_t j = i + 1; j < d.ell; ++j) {
      TierSystem sys = build_tier_system(d, {static_cast<int>(i), static_cast<int>(j)},
                                         /*polynomials_vanish=*/true);
      if (!sys.W.empty()) {
        Vec coords(sys.W.size(), zero_ratio());
        coords[0] = SymRatio(Rational(1));
        return make_witness(expand_on_cols(sys.W, coords, sys.ell, sys.cols),
                            Vec(sys.ell, zero_ratio()), pad_poly({}, degree),
                            "PairwiseIndependent");
      }
    }
  return std::nullopt;
}

}  // namespace

std::string to_string(IndependenceClass c) {
  switch (c) {
    case IndependenceClass::Dependent:
      return "Dependent";
    case IndependenceClass::PairwiseIndependent:
      return "PairwiseIndependent";
    case IndependenceClass::IrrationallyIndependent:
      return "IrrationallyIndependent";
    case IndependenceClass::StronglyIrrationallyIndependent:
      return "StronglyIrrationallyIndependent";
    case IndependenceClass::StronglyIndependent:
      return "StronglyIndependent";
  }
  return "?";
}

Classification classify_family(const std::vector<HardyExpr>& family) {
  if (family.empty()) throw std::invalid_argument("classify_family: empty family");
  std::vector<std::vector<HardyExpr>> fam;
  for (const auto& a : family) {
    if (a.is_zero()) throw std::invalid_argument("classify_family: zero member");
    fam.push_back({a});
  }
  DecomposedFamily d = decompose_family(fam);

  Classification out;
  if (auto w = violation_pairwise(d, d.degree)) {
    out.label = IndependenceClass::Dependent;
    out.witness = std::move(w);
    return out;
  }
  if (auto w = violation_irrational(d, d.degree)) {
    out.label = IndependenceClass::PairwiseIndependent;
    out.witness = std::move(w);
    return out;
  }
  TierSystem sys = build_tier_system(d, all_cols(d.ell), /*polynomials_vanish=*/false);
  if (auto w = violation_strong_irrational(sys, d.degree)) {
    out.label = IndependenceClass::IrrationallyIndependent;
    out.witness = std::move(w);
    return out;
  }
  if (auto w = violation_strong(sys, d.degree)) {
    out.label = IndependenceClass::StronglyIrrationallyIndependent;
    out.witness = std::move(w);
    return out;
  }
  out.label = IndependenceClass::StronglyIndependent;
  return out;
}

bool verify_witness(const std::vector<HardyExpr>& family, const Witness& w) {
  std::vector<std::vector<HardyExpr>> fam;
  for (const auto& a : family) fam.push_back({a});
  DecomposedFamily d = decompose_family(fam);
  if (w.c_f.size() != d.ell || w.c_xi.size() != d.ell) return false;
  bool nonzero = false;
  for (std::size_t j = 0; j < d.ell; ++j)
    if (!w.c_f[j].is_zero() || !w.c_xi[j].is_zero()) nonzero = true;
  if (!nonzero) return false;
  for (std::size_t i = static_cast<std::size_t>(d.m1); i < d.generators.size(); ++i) {
    SymRatio acc_f, acc_x;
    for (std::size_t j = 0; j < d.ell; ++j) {
      SymRatio a = SymRatio(SymReal::from_scalar(d.alpha[j][i][0]));
      acc_f = acc_f + w.c_f[j] * a;
      acc_x = acc_x + w.c_xi[j] * a;
    }
    if (!acc_f.is_zero() || !acc_x.is_zero()) return false;
  }
  for (int p = 1; p <= d.degree; ++p) {
    SymRatio acc_f, acc_x;
    for (std::size_t j = 0; j < d.ell; ++j) {
      SymRatio b = SymRatio(SymReal::from_scalar(d.beta[j][static_cast<std::size_t>(p)][0]));
      acc_f = acc_f + w.c_f[j] * b;
      acc_x = acc_x + w.c_xi[j] * b;
    }
    if (!acc_x.is_zero()) return false;
    if (!acc_f.is_rational()) return false;
    Rational expect =
        static_cast<std::size_t>(p) < w.p.size() ? w.p[static_cast<std::size_t>(p)] : Rational(0);
    if (acc_f.rational_value() != expect) return false;
  }
  return true;
}

bool boshernitzan_test(const HardyExpr& a) {
  if (a.is_zero()) throw std::invalid_argument("boshernitzan_test: zero germ");
  BasisPtr basis = a.basis();
  Term log_term{ScalarValue(basis, Rational(1)), Rational(0), Rational(1), std::nullopt};
  for (const Term& t : a.terms()) {
    if (compare_term_growth(t, log_term) <= 0) continue;
    bool poly = is_integer(t.c) && sgn(t.c) > 0 && sgn(t.e) == 0 && !t.atom;
    if (!poly) return true;
    if (!t.coeff.is_rational()) return true;
  }
  return false;
}

Integer boshernitzan_witness_lambda(const HardyExpr& a) {
  BasisPtr basis = a.basis();
  Term log_term{ScalarValue(basis, Rational(1)), Rational(0), Rational(1), std::nullopt};
  Integer lcm(1);
  for (const Term& t : a.terms()) {
    if (compare_term_growth(t, log_term) <= 0) continue;
    Integer den = t.coeff.rational_part().get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  return lcm;
}

LeadingData leading_data(const DecomposedFamily& d) {
  LeadingData out;
  out.m1 = d.m1;
  out.m2 = d.m2;
  std::size_t m = d.generators.size();
  auto alpha_of = [&](std::size_t j, std::size_t i, int coord) -> ScalarValue {
    if (j == 0) return ScalarValue();  // the zero member a_0
    return d.alpha[j - 1][i][static_cast<std::size_t>(coord)];
  };
  auto beta_of = [&](std::size_t j, std::size_t p, int coord) -> ScalarValue {
    if (j == 0) return ScalarValue();
    return d.beta[j - 1][p][static_cast<std::size_t>(coord)];
  };
  out.d.assign(d.ell + 1, 0);
  out.d_prime.assign(d.ell + 1, 0);
  for (std::size_t j = 0; j <= d.ell; ++j) {
    for (int p = d.degree; p >= 1; --p) {
      bool diff = false;
      for (int coord = 0; coord < d.k; ++coord)
        if (!(beta_of(1, static_cast<std::size_t>(p), coord) ==
              beta_of(j, static_cast<std::size_t>(p), coord)))
          diff = true;
      if (diff) {
        out.d[j] = p;
        break;
      }
    }
    for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
      bool diff = false;
      for (int coord = 0; coord < d.k; ++coord)
        if (!(alpha_of(1, static_cast<std::size_t>(i), coord) ==
              alpha_of(j, static_cast<std::size_t>(i), coord)))
          diff = true;
      if (diff) {
        out.d_prime[j] = i + 1;  // 1-based generator index
        break;
      }
    }
  }
  return out;
}

DirectionSet predicted_directions(const std::vector<std::vector<HardyExpr>>& family_vec) {
  DecomposedFamily d = decompose_family(family_vec);
  LeadingData ld = leading_data(d);
  DirectionSet out;
  auto alpha_of = [&](std::size_t j, std::size_t i, int coord) -> ScalarValue {
    if (j == 0) return ScalarValue();
    return d.alpha[j - 1][i][static_cast<std::size_t>(coord)];
  };
  auto beta_of = [&](std::size_t j, std::size_t p, int coord) -> ScalarValue {
    if (j == 0) return ScalarValue();
    return d.beta[j - 1][p][static_cast<std::size_t>(coord)];
  };
  auto push_unique = [&](std::vector<ScalarValue> v) {
    bool zero = true;
    for (const auto& x : v)
      if (!x.is_zero()) zero = false;
    if (zero) throw std::logic_error("predicted_directions: zero leading vector");
    for (const auto& u : out.vectors) {
      bool same = true;
      for (std::size_t c = 0; c < v.size(); ++c)
        if (!(u[c] == v[c])) same = false;
      if (same) return;
    }
    out.vectors.push_back(std::move(v));
  };
  for (std::size_t j = 0; j <= d.ell; ++j) {
    if (j == 1) continue;
    int dp = ld.d_prime[j], dd = ld.d[j];
    if (dp <= ld.m1 && dd == 0)
      throw DirectionError("a_1 - a_" + std::to_string(j) + " grows no faster than log",
                           static_cast<int>(j));
    std::vector<ScalarValue> v;
    if (dp > ld.m2 || (dp > ld.m1 && dd == 0)) {
      for (int coord = 0; coord < d.k; ++coord)
        v.push_back(alpha_of(1, static_cast<std::size_t>(dp - 1), coord) -
                    alpha_of(j, static_cast<std::size_t>(dp - 1), coord));
    } else {
      for (int coord = 0; coord < d.k; ++coord)
        v.push_back(beta_of(1, static_cast<std::size_t>(dd), coord) -
                    beta_of(j, static_cast<std::size_t>(dd), coord));
    }
    push_unique(std::move(v));
  }
  return out;
}

DirectionSet predicted_directions(const std::vector<HardyExpr>& family,
                                  const std::vector<int>& eta, int k) {
  if (eta.size() != family.size())
    throw std::invalid_argument("predicted_directions: eta must assign every member");
  std::vector<std::vector<HardyExpr>> fam;
  BasisPtr basis;
  for (const auto& a : family)
    if (a.basis()) basis = basis ? merge_bases(basis, a.basis()) : a.basis();
  if (!basis) basis = GeneratorBasis::unit_only();
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (eta[j] < 1 || eta[j] > k)
      throw std::invalid_argument("predicted_directions: eta index out of range");
    std::vector<HardyExpr> member(static_cast<std::size_t>(k), HardyExpr(basis));
    member[static_cast<std::size_t>(eta[j] - 1)] = family[j];
    fam.push_back(std::move(member));
  }
  return predicted_directions(fam);
}

}  // namespace hardy::indep
