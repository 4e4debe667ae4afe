#include "hardyergo/rational.hpp"

#include <cctype>

namespace hardy {

std::optional<Rational> parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return std::nullopt;
  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) return std::nullopt;

  auto is_plain_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_plain_int(num) || !is_plain_int(den)) return std::nullopt;
    Integer d(den, 10);
    if (d == 0) return std::nullopt;
    Rational r(Integer(num, 10), d);
    r.canonicalize();
    return r;
  }
  if (is_plain_int(s)) return Rational(Integer(s, 10));

  // Decimal / scientific literal, converted exactly.
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else {
      digits.push_back(s[i]);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    }
  }
  if (!seen_digit) return std::nullopt;
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i == s.size()) return std::nullopt;
    std::string e;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      e.push_back(s[i]);
    }
    exp10 = std::stol(e);
    if (eneg) exp10 = -exp10;
  }
  if (i != s.size()) return std::nullopt;
  Rational r(Integer(digits.empty() ? std::string("0") : digits, 10));
  long net = exp10 - frac_digits;
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(net >= 0 ? net : -net));
  if (net >= 0)
    r *= Rational(p10);
  else
    r /= Rational(p10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rational> rational_root(const Rational& q, unsigned long k) {
  if (k == 0) return std::nullopt;
  if (k == 1) return q;
  if (sgn(q) < 0) return std::nullopt;
  Integer nr, dr;
  if (!mpz_root(nr.get_mpz_t(), q.get_num().get_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(dr.get_mpz_t(), q.get_den().get_mpz_t(), k)) return std::nullopt;
  return Rational(nr, dr);
}

std::pair<Integer, Integer> split_square(const Integer& n) {
  if (n <= 0) throw std::invalid_argument("split_square: positive argument required");
  Integer s(1), r(1), m(n);
  // Trial division is plenty for the radicands that occur in practice.
  for (Integer p(2); p * p <= m;) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      for (int i = 0; i + 1 < e; i += 2) s *= p;
      if (e % 2) r *= p;
    }
    p += p == 2 ? 1 : 2;
  }
  r *= m;
  return {s, r};
}

}  // namespace hardy
