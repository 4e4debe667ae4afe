#include <cctype>

#include "hardyergo/hardy_expr.hpp"

namespace hardy {
namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "' " + what, pos);
  }
  std::optional<std::string> ident() {
    skip_ws();
    if (pos >= s.size()) return std::nullopt;
    if (!std::isalpha(static_cast<unsigned char>(s[pos])) && s[pos] != '_') return std::nullopt;
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }
  std::optional<Integer> integer() {
    skip_ws();
    std::size_t start = pos;
    std::size_t p = pos;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
    std::size_t d0 = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == d0) return std::nullopt;
    pos = p;
    return Integer(s.substr(start, pos - start), 10);
  }
};

struct Parser {
  Lexer lx;
  BasisBuilder& basis;

  // rat := int | "(" int "/" int ")" | int "/" int
  Rational parse_rat() {
    if (lx.peek() == '(') {
      std::size_t save = lx.pos;
      lx.accept('(');
      auto n = lx.integer();
      if (n && lx.accept('/')) {
        auto d = lx.integer();
        if (!d) throw ParseError("expected denominator", lx.pos);
        lx.expect(')', "after rational");
        if (*d == 0) throw ParseError("zero denominator", lx.pos);
        Rational r(*n, *d);
        r.canonicalize();
        return r;
      }
      if (n && lx.accept(')')) return Rational(*n);
      lx.pos = save;
      throw ParseError("expected rational", lx.pos);
    }
    auto n = lx.integer();
    if (!n) throw ParseError("expected number", lx.pos);
    std::size_t save = lx.pos;
    if (lx.accept('/')) {
      auto d = lx.integer();
      if (d && *d != 0) {
        Rational r(*n, *d);
        r.canonicalize();
        return r;
      }
      lx.pos = save;
    }
    return Rational(*n);
  }

  Rational parse_exponent() { return parse_rat(); }

  struct Factor {
    // exactly one of these is active
    enum Kind { Power, Log, Atom, Scalar } kind;
    Rational exponent;       // Power / Log
    SubfracAtom atom{};      // Atom
    ScalarValue scalar;      // Scalar
  };

  std::optional<Factor> parse_factor() {
    lx.skip_ws();
    std::size_t save = lx.pos;
    if (auto id = lx.ident()) {
      if (*id == "t" || *id == "n") {
        Factor f{Factor::Power, Rational(1), {}, {}};
        if (lx.accept('^')) f.exponent = parse_exponent();
        return f;
      }
      if (*id == "log") {
        lx.expect('(', "after log");
        auto v = lx.ident();
        if (!v || (*v != "t" && *v != "n")) throw ParseError("log argument must be t", lx.pos);
        lx.expect(')', "after log(t");
        Factor f{Factor::Log, Rational(1), {}, {}};
        if (lx.accept('^')) f.exponent = parse_exponent();
        return f;
      }
      if (*id == "exps") {
        lx.expect('(', "after exps");
        Rational q = parse_rat();
        lx.expect(',', "in exps(q,beta)");
        Rational beta = parse_rat();
        lx.expect(')', "after exps arguments");
        if (sgn(q) == 0 || sgn(beta) <= 0 || beta >= 1)
          throw ParseError("outside supported class: exps needs q != 0 and 0 < beta < 1",
                           lx.pos);
        Factor f{Factor::Atom, Rational(0), SubfracAtom{q, beta}, {}};
        return f;
      }
      if (*id == "sqrt") {
        lx.expect('(', "after sqrt");
        auto n = lx.integer();
        if (!n || *n <= 0) throw ParseError("sqrt needs a positive integer", lx.pos);
        lx.expect(')', "after sqrt radicand");
        auto [s, r] = split_square(*n);
        ScalarValue v;
        if (r == 1) {
          v = ScalarValue(basis.freeze(), Rational(s));
        } else {
          int gi = basis.add_sqrt(r.get_ui());
          v = ScalarValue::generator(basis.freeze(), gi, Rational(s));
        }
        return Factor{Factor::Scalar, Rational(0), {}, v};
      }
      if (*id == "exp")
        throw ParseError("outside supported class: exp(...) grows beyond the germ class", save);
      int gi = basis.index_of(*id);
      if (gi < 0) throw ParseError("undeclared symbol '" + *id + "'", save);
      return Factor{Factor::Scalar, Rational(0), {},
                    ScalarValue::generator(basis.freeze(), gi, Rational(1))};
    }
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      Rational q = parse_rat();
      return Factor{Factor::Scalar, Rational(0), {}, ScalarValue(basis.freeze(), q)};
    }
    return std::nullopt;
  }

  Term parse_term(bool negative) {
    ScalarValue coeff(basis.freeze(), negative ? Rational(-1) : Rational(1));
    Rational c(0), e(0);
    std::optional<SubfracAtom> atom;
    bool any = false;
    for (;;) {
      auto f = parse_factor();
      if (!f) {
        if (!any) throw ParseError("expected term", lx.pos);
        break;
      }
      any = true;
      switch (f->kind) {
        case Factor::Power:
          c += f->exponent;
          break;
        case Factor::Log:
          e += f->exponent;
          break;
        case Factor::Atom:
          if (atom) {
            if (atom->beta != f->atom.beta)
              throw ParseError("outside supported class: atoms with different log exponents",
                               lx.pos);
            atom->q += f->atom.q;
            if (sgn(atom->q) == 0) atom.reset();
          } else {
            atom = f->atom;
          }
          break;
        case Factor::Scalar: {
          auto prod = coeff.mul(f->scalar);
          if (!prod) {
            // sqrt * sqrt products may need a basis extension.
            auto retry = rebase(coeff, basis.freeze()).mul(rebase(f->scalar, basis.freeze()));
            if (!retry) {
              bool extended = false;
              if (coeff.coeffs().size() == 1 && f->scalar.coeffs().size() == 1) {
                const Generator& ga = coeff.basis()->gen(coeff.coeffs()[0].first);
                const Generator& gb = f->scalar.basis()->gen(f->scalar.coeffs()[0].first);
                if (ga.kind == GenKind::Sqrt && gb.kind == GenKind::Sqrt) {
                  Integer pr = Integer(ga.radicand) * Integer(gb.radicand);
                  auto [sq, rad] = split_square(pr);
                  if (rad != 1) {
                    basis.add_sqrt(rad.get_ui());
                    extended = true;
                  }
                }
              }
              if (extended)
                retry = rebase(coeff, basis.freeze()).mul(rebase(f->scalar, basis.freeze()));
            }
            if (!retry)
              throw ParseError(
                  "product of two generic irrational scalars is outside the declared basis",
                  lx.pos);
            coeff = *retry;
          } else {
            coeff = *prod;
          }
          break;
        }
      }
      if (!lx.accept('*')) break;
    }
    return Term{coeff, c, e, atom};
  }

  HardyExpr parse() {
    std::vector<Term> terms;
    bool neg = false;
    if (lx.accept('-'))
      neg = true;
    else
      lx.accept('+');
    terms.push_back(parse_term(neg));
    while (!lx.eof()) {
      if (lx.accept('+'))
        terms.push_back(parse_term(false));
      else if (lx.accept('-'))
        terms.push_back(parse_term(true));
      else
        throw ParseError("unexpected input", lx.pos);
    }
    BasisPtr b = basis.freeze();
    std::vector<Term> rebased;
    for (Term& t : terms) {
      if (sgn(t.c) < 0)
        throw ParseError("outside supported class: negative power of t in input", lx.pos);
      rebased.push_back(Term{rebase(t.coeff, b), t.c, t.e, t.atom});
    }
    return HardyExpr::from_terms(b, std::move(rebased));
  }
};

}  // namespace

HardyExpr parse_expr(const std::string& text, BasisBuilder& basis) {
  Parser p{Lexer{text}, basis};
  return p.parse();
}

HardyExpr parse_expr(const std::string& text, const BasisPtr& basis) {
  BasisBuilder b(basis);
  return parse_expr(text, b);
}

}  // namespace hardy
