#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardyergo/scalar.hpp"

namespace hardy::pet {

// Monomial key n^{npow} * h_1^{hexp[0]} ... h_{s1}^{hexp[s1-1]}.
struct MonoKey {
  int npow = 0;
  std::vector<int> hexp;
  bool operator<(const MonoKey& o) const {
    if (npow != o.npow) return npow < o.npow;
    return hexp < o.hexp;
  }
  bool operator==(const MonoKey& o) const { return npow == o.npow && hexp == o.hexp; }
};

// Polynomial in R^k[n, h_1..h_{s1}] with exact vector coefficients.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int k, int s1) : k_(k), s1_(s1) {}

  int k() const { return k_; }
  int s1() const { return s1_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<MonoKey, std::vector<ScalarValue>>& coeffs() const { return coeffs_; }

  void add(const MonoKey& key, const std::vector<ScalarValue>& v);
  std::vector<ScalarValue> coeff(const MonoKey& key) const;

  int degree_n() const;
  MultiPoly operator-(const MultiPoly& o) const;
  bool operator==(const MultiPoly& o) const { return coeffs_ == o.coeffs_; }

  // q(n + h_new, h) - q(h_new, h) with h_new appended as variable s1.
  MultiPoly sigma_shift() const;
  // reinterpret with one more h variable (exponent 0).
  MultiPoly lift() const;
  // drop all monomials with npow == 0.
  MultiPoly drop_n_constant() const;
  // coefficient of n^p as a polynomial in h (key npow = 0).
  MultiPoly n_coefficient(int p) const;
  bool multilinear_in_h() const;

  std::string str(int coord = -1) const;

 private:
  int k_ = 1, s1_ = 0;
  std::map<MonoKey, std::vector<ScalarValue>> coeffs_;  // no zero vectors
};

// u-multi-index over the h variables.
using UIndex = std::vector<int>;

// Provenance of a descendent family: the shared base index w_u and the
// per-member indices w_{j,u} into the original family [0..ell].
struct Provenance {
  std::map<UIndex, int> base;                   // w_u
  std::vector<std::map<UIndex, int>> member;    // w_{j,u} per member
};

struct PolyFamily {
  std::vector<MultiPoly> polys;
  Provenance prov;
  int s1 = 0;  // number of h variables
};

struct DescendenceReport {
  bool ok = true;
  std::string violated_clause;  // "reconstruction", "w1", "multilinearity", "leading"
  int j = -1;
  UIndex u;
  std::string detail;
};

// Original-family data used by descendence checks and control-poly oracles.
struct OriginalFamily {
  std::vector<MultiPoly> polys;  // p_1..p_ell in R^k[n], normalized (p_j(0) = 0)
  int degree = 0;
  // beta[j][i] = coefficient vector of n^i in p_j (i = 1..degree, j = 1..ell; j=0 is zero)
  std::vector<ScalarValue> beta(std::size_t j, int i) const;
  int k = 1;
};

// One van der Corput step: differencing by member m with a fresh h variable,
// dropping n-free monomials, zero members, and duplicates (first copy kept).
PolyFamily vdc_op(const PolyFamily& q, const OriginalFamily& p, std::size_t m);

// Verifies the descendence certificate of q over p exactly.
DescendenceReport check_descendence(const PolyFamily& q, const OriginalFamily& p);

// Scheduler: an index m such that sigma q_1 - q_m has maximal n-degree in
// the differenced family and descendence still verifies.  Throws when no
// admissible m exists (cannot happen for normal families).
std::size_t select_m(const PolyFamily& q, const OriginalFamily& p);

struct PetStep {
  std::size_t m;
  PolyFamily family;
};

struct PetResult {
  OriginalFamily original;      // after recentering/normalization
  std::vector<PetStep> steps;   // schedule m_1..m_{s1} with intermediate families
  PolyFamily final_family;      // all members linear in n
  std::vector<MultiPoly> control;  // c_1..c_{s2} in R^k[h]
  int s1 = 0, s2 = 0;
  bool recentered = false;      // p_1 lacked maximal degree; composed away
};

struct PetError : std::runtime_error {
  explicit PetError(const std::string& m) : std::runtime_error(m) {}
};

// Full PET run: normalize, iterate vdc_op until all members are linear in n,
// emit control polynomials beta_11, beta_11 - beta_{s2,1}, .., beta_11 - beta_21.
PetResult run_pet(const std::vector<MultiPoly>& p, int degree_cap,
                  std::size_t max_steps = 1u << 20);

// Oracle data: for control poly c_j and u-index u, the provenance index w
// such that the coefficient equals (|u|+1)! (beta_{1(|u|+1)} - beta_{w(|u|+1)}).
std::optional<int> control_provenance(const PetResult& r, std::size_t cj, const UIndex& u);

}  // namespace hardy::pet
