#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardyergo/bigfloat.hpp"
#include "hardyergo/rational.hpp"

namespace hardy {

enum class GenKind { Unit, Sqrt, Named, NamedPow };

// One declared irrational generator.  The basis assumes the generators are
// Q-linearly independent reals; this is a modelling assumption, not checked.
struct Generator {
  std::string tag;
  GenKind kind = GenKind::Unit;
  unsigned long radicand = 1;    // Sqrt: square-free, > 1
  Rational value{};              // Named: declared numeric value (exact rational)
  std::string base;              // NamedPow: tag of the base Named generator
  int power = 1;                 // NamedPow: exponent >= 2
};

class GeneratorBasis;
using BasisPtr = std::shared_ptr<const GeneratorBasis>;

// Immutable ordered list of generators; index 0 is always the unit.
class GeneratorBasis : public std::enable_shared_from_this<GeneratorBasis> {
 public:
  static BasisPtr unit_only();
  // decl: semicolon-separated "tag=sqrt(n)", "tag=irr(decimal)",
  // "tag=pow(base,k)"; empty string gives the unit basis.
  static BasisPtr parse(const std::string& decl);

  std::size_t size() const { return gens_.size(); }
  const Generator& gen(int i) const { return gens_[static_cast<std::size_t>(i)]; }
  int index_of(const std::string& tag) const;          // -1 if absent
  int index_of_sqrt(unsigned long square_free) const;  // -1 if absent

  // Returns a basis extended with sqrt(square_free) if not already present,
  // together with the generator index in the returned basis.
  static std::pair<BasisPtr, int> with_sqrt(const BasisPtr& b, unsigned long square_free);

  num::Interval enclosure(int i, mpfr_prec_t prec) const;
  std::string describe() const;

 private:
  friend class BasisBuilder;
  std::vector<Generator> gens_;
  std::map<std::string, int> index_;
};

// Mutable builder used during parsing; freezes into a shared immutable basis.
class BasisBuilder {
 public:
  BasisBuilder();
  explicit BasisBuilder(const BasisPtr& start);
  int add_sqrt(unsigned long square_free);  // idempotent
  int add_named(const std::string& tag, const Rational& value);
  int add_named_pow(const std::string& tag, const std::string& base, int power);
  int index_of(const std::string& tag) const;
  BasisPtr freeze();

 private:
  std::shared_ptr<GeneratorBasis> b_;
};

// Exact real in the Q-span of the declared generators.
class ScalarValue {
 public:
  ScalarValue() = default;
  explicit ScalarValue(BasisPtr basis) : basis_(std::move(basis)) {}
  ScalarValue(BasisPtr basis, const Rational& rational_part);
  static ScalarValue generator(BasisPtr basis, int index, const Rational& coeff = Rational(1));

  const BasisPtr& basis() const { return basis_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const;
  // Rational part (coefficient of the unit generator).
  Rational rational_part() const;
  const std::vector<std::pair<int, Rational>>& coeffs() const { return coeffs_; }
  Rational coeff(int gen_index) const;

  ScalarValue operator+(const ScalarValue& o) const;
  ScalarValue operator-(const ScalarValue& o) const;
  ScalarValue operator-() const;
  ScalarValue mul_rational(const Rational& q) const;
  // Exact product; fails (nullopt) when the result leaves the declared basis.
  std::optional<ScalarValue> mul(const ScalarValue& o) const;

  bool operator==(const ScalarValue& o) const;
  bool operator!=(const ScalarValue& o) const { return !(*this == o); }
  bool operator<(const ScalarValue& o) const;  // structural order for map keys

  // Exact sign via interval refinement; relies on Q-independence of the
  // declared generators.  Throws on escalation-cap overrun.
  int sign() const;

  num::Interval enclosure(mpfr_prec_t prec) const;
  std::string str() const;

  void set_coeff(int gen_index, const Rational& q);

 private:
  BasisPtr basis_;
  std::vector<std::pair<int, Rational>> coeffs_;  // sorted by index, no zeros
};

// Rebase onto a superset basis (generators matched by tag).  Throws if a
// generator of v is missing from target.
ScalarValue rebase(const ScalarValue& v, const BasisPtr& target);

// Smallest common extension of two bases (tag-compatible union).
BasisPtr merge_bases(const BasisPtr& a, const BasisPtr& b);

}  // namespace hardy
