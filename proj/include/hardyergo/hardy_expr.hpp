#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardyergo/bigfloat.hpp"
#include "hardyergo/scalar.hpp"

namespace hardy {

// exp(q * (log t)^beta) with rational q != 0 and beta in (0,1).  These atoms
// are the subfractional extension point of the germ class; distinct (q,beta)
// pairs are distinct atoms.
struct SubfracAtom {
  Rational q;
  Rational beta;
  bool operator==(const SubfracAtom& o) const { return q == o.q && beta == o.beta; }
};

// Growth comparison of atom factors: exp(q (log t)^b) vs exp(q' (log t)^b').
// Returns -1/0/+1 for slower/equal/faster.
int compare_atoms(const std::optional<SubfracAtom>& a, const std::optional<SubfracAtom>& b);

// One monomial  coeff * t^c * (log t)^e * atom.
struct Term {
  ScalarValue coeff;
  Rational c;  // power of t
  Rational e;  // power of log t
  std::optional<SubfracAtom> atom;
};

// Growth key of a monomial: lexicographic (c, atom, e).
int compare_term_growth(const Term& a, const Term& b);

enum class Growth { Slower, Comparable, Faster };
enum class FracdegOrder { StrictlySlower, Equal, StrictlyFaster };
struct GrowthComparison {
  Growth growth;
  FracdegOrder fracdeg;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  std::size_t pos;
};

// A Hardy germ in canonical normal form: terms sorted strictly descending by
// growth, no zero coefficients, (c, e, atom) keys pairwise distinct.
// Immutable after construction.
class HardyExpr {
 public:
  HardyExpr() = default;
  explicit HardyExpr(BasisPtr basis) : basis_(std::move(basis)) {}

  static HardyExpr from_terms(BasisPtr basis, std::vector<Term> terms);
  static HardyExpr constant(BasisPtr basis, const ScalarValue& v);
  static HardyExpr monomial(BasisPtr basis, const ScalarValue& coeff, const Rational& c,
                            const Rational& e = Rational(0),
                            std::optional<SubfracAtom> atom = std::nullopt);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Term& leading() const;

  bool operator==(const HardyExpr& o) const;

  HardyExpr operator+(const HardyExpr& o) const;
  HardyExpr operator-(const HardyExpr& o) const;
  HardyExpr operator-() const;
  HardyExpr mul_rational(const Rational& q) const;
  HardyExpr mul_scalar(const ScalarValue& v) const;  // throws if products leave basis

  // Exact product; throws when coefficient products leave the basis or atom
  // products leave the registry (different beta).
  HardyExpr mul(const HardyExpr& o) const;
  HardyExpr pow_int(long k) const;  // k >= 0, or k < 0 for single monomials

  std::string str() const;

  bool is_polynomial() const;  // integer powers >= 0, no logs, no atoms
  // True iff t^d << expr << t^{d+1} for some integer d >= 0.
  bool is_strongly_nonpolynomial() const;
  bool is_subfractional() const;  // fracdeg 0
  bool tends_to_zero() const;     // every term has negative growth
  bool grows_faster_than_log() const;

  friend HardyExpr differentiate(const HardyExpr& a);
  friend Rational fracdeg(const HardyExpr& a);
  friend GrowthComparison compare_growth(const HardyExpr& a, const HardyExpr& b);

 private:
  BasisPtr basis_;
  std::vector<Term> terms_;
};

HardyExpr differentiate(const HardyExpr& a);
HardyExpr differentiate(const HardyExpr& a, int times);

// Power of the dominant term; throws std::domain_error on the zero germ.
Rational fracdeg(const HardyExpr& a);

GrowthComparison compare_growth(const HardyExpr& a, const HardyExpr& b);

// a(b(t)) for b = t^gamma (gamma > 0 rational); atoms require gamma^beta
// rational.  Used by the fracdeg composition law and the solver's chi.
HardyExpr compose_power(const HardyExpr& a, const Rational& gamma);

// Parsing and printing.  parse() auto-declares sqrt(n) generators it
// encounters; named symbols must already exist in the builder.
HardyExpr parse_expr(const std::string& text, BasisBuilder& basis);
HardyExpr parse_expr(const std::string& text, const BasisPtr& basis);

// Interval evaluation at t (>= 2 within rounding) with working precision
// prec; the interval width certifies the rounding error.
num::Interval eval_interval(const HardyExpr& a, const num::Interval& t, mpfr_prec_t prec);
num::Interval eval_at_integer(const HardyExpr& a, const Integer& t, mpfr_prec_t prec);

// Taylor coefficients a^(l)(t0)/l! for l = 0..order.
std::vector<num::Interval> taylor_coeffs(const HardyExpr& a, const Integer& t0, int order,
                                         mpfr_prec_t prec = 192);

// ---- Decomposition ------------------------------------------------------

// Lemma-style decomposition of a finite family of R^k-valued germs into
// strongly nonpolynomial generators, polynomial parts and an o(1) remainder.
struct DecomposedFamily {
  std::vector<HardyExpr> generators;           // ascending growth, coeff 1
  int m1 = 0;                                  // last index (1-based) with g <= log
  int m2 = 0;                                  // last index (1-based) with fracdeg 0
  int degree = 0;                              // max polynomial degree d
  std::size_t ell = 0;                         // number of family members
  int k = 1;                                   // ambient dimension
  // alpha[j][i][coord]: coefficient of generator i (0-based) in member j.
  std::vector<std::vector<std::vector<ScalarValue>>> alpha;
  // beta[j][p][coord]: coefficient of t^p (p = 0..degree) in member j.
  std::vector<std::vector<std::vector<ScalarValue>>> beta;
  std::vector<bool> has_remainder;             // member has an o(1) tail
};

// family[j][coord] = a_{j,coord}.  All members must share one basis.
DecomposedFamily decompose_family(const std::vector<std::vector<HardyExpr>>& family);

}  // namespace hardy
