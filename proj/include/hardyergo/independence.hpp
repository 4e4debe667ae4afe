#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardyergo/hardy_expr.hpp"
#include "hardyergo/symreal.hpp"

namespace hardy::indep {

enum class IndependenceClass {
  Dependent,
  PairwiseIndependent,
  IrrationallyIndependent,
  StronglyIrrationallyIndependent,
  StronglyIndependent,
};

std::string to_string(IndependenceClass c);

// A certified violation: the combination sum_j c_j a_j - p grows at most like
// log.  c = c_f + xi * c_xi, where xi stands for an arbitrary irrational
// scaling; coordinates carrying a nonzero xi part are irrational for a
// suitable choice of xi.
struct Witness {
  std::vector<SymRatio> c_f;
  std::vector<SymRatio> c_xi;
  std::vector<Rational> p;  // p(t) = sum_k p[k] t^k
  std::string violates;     // name of the independence tier this refutes
  bool uses_xi() const {
    for (const auto& v : c_xi)
      if (!v.is_zero()) return true;
    return false;
  }
};

struct Classification {
  IndependenceClass label = IndependenceClass::StronglyIndependent;
  std::optional<Witness> witness;  // for the weakest tier that fails
};

// Exact classification of a scalar family into the independence hierarchy.
Classification classify_family(const std::vector<HardyExpr>& family);

// Checks the witness against the family's decomposition: every monomial that
// grows faster than log cancels and every integer power ends up with the
// rational coefficient recorded in p.
bool verify_witness(const std::vector<HardyExpr>& family, const Witness& w);

// Equidistribution of (a(n)) mod 1: true iff a stays logarithmically away
// from rational polynomials.
bool boshernitzan_test(const HardyExpr& a);

// For a failing boshernitzan_test: an integer lambda != 0 such that
// E e(lambda * a(n)) does not tend to 0.
Integer boshernitzan_witness_lambda(const HardyExpr& a);

// Leading data of a vector-valued family relative to member 1.
struct LeadingData {
  std::vector<int> d;        // d_{1j}: degree of p_1 - p_j (0 if equal), j = 0..ell
  std::vector<int> d_prime;  // d'_{1j}: last generator index (1-based) with alpha diff
  int m1 = 0, m2 = 0;
};

struct DirectionSet {
  std::vector<std::vector<ScalarValue>> vectors;  // distinct nonzero vectors in R^k
  int multiplicity = 1;  // copies of each direction used downstream
};

struct DirectionError : std::runtime_error {
  DirectionError(const std::string& msg, int pair) : std::runtime_error(msg), offending_j(pair) {}
  int offending_j;
};

LeadingData leading_data(const DecomposedFamily& d);

// Control directions predicted for the family: for each j in [0,ell]\{1} the
// leading coefficient of a_1 - a_j in the ordering
// g_1..g_{m2}, t, .., t^d, g_{m2+1}..g_m.  Throws DirectionError when some
// a_1 - a_j grows no faster than log.
DirectionSet predicted_directions(const std::vector<std::vector<HardyExpr>>& family_vec);

// Convenience for scalar sequences with a transformation assignment eta
// (1-based indices into [k]): member j becomes a_j * e_{eta_j}.
DirectionSet predicted_directions(const std::vector<HardyExpr>& family,
                                  const std::vector<int>& eta, int k);

}  // namespace hardy::indep
