#include "doctest.h"

#include "hardyergo/scalar.hpp"
#include "hardyergo/symreal.hpp"

using namespace hardy;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(*parse_rational("3/2")) == "3/2");
  CHECK(to_string(*parse_rational("(3/2)")) == "3/2");
  CHECK(to_string(*parse_rational("-4/2")) == "-2");
  CHECK(to_string(*parse_rational("0.25")) == "1/4");
  CHECK(to_string(*parse_rational("1.5e-2")) == "3/200");
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("x"));
}

TEST_CASE("square splitting") {
  auto [s, r] = split_square(Integer(72));
  CHECK(s == 6);
  CHECK(r == 2);
  auto [s2, r2] = split_square(Integer(17));
  CHECK(s2 == 1);
  CHECK(r2 == 17);
}

TEST_CASE("scalar arithmetic over a sqrt basis") {
  BasisBuilder bb;
  int i2 = bb.add_sqrt(2);
  int i3 = bb.add_sqrt(3);
  BasisPtr b = bb.freeze();
  ScalarValue s2 = ScalarValue::generator(b, i2);
  ScalarValue s3 = ScalarValue::generator(b, i3);
  ScalarValue x = s2.mul_rational(rat(1, 2)) + s3 + ScalarValue(b, rat(5));
  CHECK(x.str() == "5 + 1/2*sqrt2 + sqrt3");
  CHECK((x - x).is_zero());
  CHECK(!x.is_rational());
  CHECK(x.sign() == 1);
  CHECK((s2 - s3).sign() == -1);

  // sqrt2 * sqrt2 = 2 stays in the basis; sqrt2 * sqrt3 leaves it.
  auto sq = s2.mul(s2);
  REQUIRE(sq.has_value());
  CHECK(sq->is_rational());
  CHECK(sq->rational_part() == 2);
  CHECK(!s2.mul(s3).has_value());
}

TEST_CASE("declared power generators multiply exactly") {
  BasisPtr b = GeneratorBasis::parse("a=irr(2.71828);a2=pow(a,2)");
  ScalarValue a = ScalarValue::generator(b, b->index_of("a"));
  auto a_sq = a.mul(a);
  REQUIRE(a_sq.has_value());
  CHECK(a_sq->coeff(b->index_of("a2")) == 1);
  auto a_cube = a_sq->mul(a);
  CHECK(!a_cube.has_value());
}

TEST_CASE("enclosures are certified") {
  BasisBuilder bb;
  int i2 = bb.add_sqrt(2);
  BasisPtr b = bb.freeze();
  ScalarValue v = ScalarValue::generator(b, i2);
  auto iv = v.enclosure(128);
  CHECK(iv.width() < 1e-30);
  CHECK(iv.mid_double() == doctest::Approx(1.4142135623730951));
}

TEST_CASE("sym ring multiplies sqrt monomials with square-free reduction") {
  SymMonomial m2{2, {}}, m3{3, {}};
  SymReal a = SymReal::monomial(m2);
  SymReal b = SymReal::monomial(m3);
  SymReal p = a * b;  // sqrt(6)
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms().begin()->first.radicand == 6);
  SymReal q = a * a;  // 2
  CHECK(q.is_rational());
  CHECK(q.rational_value() == 2);
}

TEST_CASE("sym ratio rationality test") {
  SymMonomial m3{3, {}};
  SymReal s3 = SymReal::monomial(m3);
  SymRatio r(SymReal(rat(2)) * s3, s3);  // 2*sqrt3 / sqrt3 = 2
  CHECK(r.is_rational());
  CHECK(r.rational_value() == 2);
  SymRatio irr(s3, SymReal(rat(3)));
  CHECK(!irr.is_rational());
  SymRatio inv(SymReal(rat(1)), s3);  // 1/sqrt3
  CHECK(!inv.is_rational());
  CHECK((inv * SymRatio(s3)).rational_value() == 1);
}
