#include "hardyergo/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hardy {

namespace {
std::string sqrt_tag(unsigned long r) { return "sqrt" + std::to_string(r); }
}  // namespace

BasisPtr GeneratorBasis::unit_only() {
  auto b = std::make_shared<GeneratorBasis>();
  b->gens_.push_back(Generator{"unit", GenKind::Unit, 1, Rational(1), "", 1});
  b->index_["unit"] = 0;
  return b;
}

int GeneratorBasis::index_of(const std::string& tag) const {
  auto it = index_.find(tag);
  return it == index_.end() ? -1 : it->second;
}

int GeneratorBasis::index_of_sqrt(unsigned long square_free) const {
  return index_of(sqrt_tag(square_free));
}

std::pair<BasisPtr, int> GeneratorBasis::with_sqrt(const BasisPtr& b, unsigned long square_free) {
  int i = b->index_of_sqrt(square_free);
  if (i >= 0) return {b, i};
  BasisBuilder builder(b);
  int j = builder.add_sqrt(square_free);
  return {builder.freeze(), j};
}

num::Interval GeneratorBasis::enclosure(int i, mpfr_prec_t prec) const {
  const Generator& g = gens_[static_cast<std::size_t>(i)];
  switch (g.kind) {
    case GenKind::Unit:
      return num::Interval::exact_ui(1, prec);
    case GenKind::Sqrt:
      return num::Interval::sqrt_ui(g.radicand, prec);
    case GenKind::Named:
      return num::Interval::from_rational(g.value, prec);
    case GenKind::NamedPow: {
      int bi = index_of(g.base);
      if (bi < 0) throw std::logic_error("dangling NamedPow base");
      Rational v = pow_int(gens_[static_cast<std::size_t>(bi)].value, g.power);
      return num::Interval::from_rational(v, prec);
    }
  }
  throw std::logic_error("unreachable");
}

std::string GeneratorBasis::describe() const {
  std::ostringstream os;
  for (std::size_t i = 1; i < gens_.size(); ++i) {
    const Generator& g = gens_[i];
    if (i > 1) os << ";";
    os << g.tag << "=";
    if (g.kind == GenKind::Sqrt)
      os << "sqrt(" << g.radicand << ")";
    else if (g.kind == GenKind::Named)
      os << "irr(" << to_string(g.value) << ")";
    else
      os << "pow(" << g.base << "," << g.power << ")";
  }
  return os.str();
}

BasisPtr GeneratorBasis::parse(const std::string& decl) {
  BasisBuilder b;
  std::string item;
  std::istringstream in(decl);
  while (std::getline(in, item, ';')) {
    auto strip = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    item = strip(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("basis item needs '=': " + item);
    std::string tag = strip(item.substr(0, eq));
    std::string rhs = strip(item.substr(eq + 1));
    auto args_of = [&](const std::string& head) -> std::optional<std::string> {
      if (rhs.rfind(head + "(", 0) == 0 && rhs.back() == ')')
        return rhs.substr(head.size() + 1, rhs.size() - head.size() - 2);
      return std::nullopt;
    };
    if (auto a = args_of("sqrt")) {
      Integer n(*a, 10);
      if (n <= 1) throw std::invalid_argument("sqrt radicand must be > 1");
      auto [s, r] = split_square(n);
      if (r == 1) throw std::invalid_argument("sqrt(" + *a + ") is rational; not a generator");
      if (s != 1) throw std::invalid_argument("sqrt radicand must be square-free: " + *a);
      (void)b.add_sqrt(r.get_ui());
      if (tag != sqrt_tag(r.get_ui()))
        throw std::invalid_argument("sqrt generator must be tagged " + sqrt_tag(r.get_ui()));
    } else if (auto v = args_of("irr")) {
      auto q = parse_rational(*v);
      if (!q) throw std::invalid_argument("bad irr() literal: " + *v);
      (void)b.add_named(tag, *q);
    } else if (auto p = args_of("pow")) {
      auto comma = p->find(',');
      if (comma == std::string::npos) throw std::invalid_argument("pow needs (base,k)");
      std::string base = strip(p->substr(0, comma));
      int k = std::stoi(p->substr(comma + 1));
      (void)b.add_named_pow(tag, base, k);
    } else {
      throw std::invalid_argument("unknown basis declaration: " + rhs);
    }
  }
  return b.freeze();
}

BasisBuilder::BasisBuilder() {
  b_ = std::make_shared<GeneratorBasis>();
  b_->gens_.push_back(Generator{"unit", GenKind::Unit, 1, Rational(1), "", 1});
  b_->index_["unit"] = 0;
}

BasisBuilder::BasisBuilder(const BasisPtr& start) {
  b_ = std::make_shared<GeneratorBasis>();
  b_->gens_ = start->gens_;
  b_->index_ = start->index_;
}

int BasisBuilder::add_sqrt(unsigned long square_free) {
  std::string tag = sqrt_tag(square_free);
  int i = b_->index_of(tag);
  if (i >= 0) return i;
  b_->gens_.push_back(Generator{tag, GenKind::Sqrt, square_free, Rational(0), "", 1});
  int j = static_cast<int>(b_->gens_.size()) - 1;
  b_->index_[tag] = j;
  return j;
}

int BasisBuilder::add_named(const std::string& tag, const Rational& value) {
  int i = b_->index_of(tag);
  if (i >= 0) return i;
  b_->gens_.push_back(Generator{tag, GenKind::Named, 1, value, "", 1});
  int j = static_cast<int>(b_->gens_.size()) - 1;
  b_->index_[tag] = j;
  return j;
}

int BasisBuilder::add_named_pow(const std::string& tag, const std::string& base, int power) {
  if (power < 2) throw std::invalid_argument("pow generator needs exponent >= 2");
  int bi = b_->index_of(base);
  if (bi < 0 || b_->gens_[static_cast<std::size_t>(bi)].kind != GenKind::Named)
    throw std::invalid_argument("pow base must be a declared irr() generator: " + base);
  int i = b_->index_of(tag);
  if (i >= 0) return i;
  b_->gens_.push_back(Generator{tag, GenKind::NamedPow, 1, Rational(0), base, power});
  int j = static_cast<int>(b_->gens_.size()) - 1;
  b_->index_[tag] = j;
  return j;
}

int BasisBuilder::index_of(const std::string& tag) const { return b_->index_of(tag); }

BasisPtr BasisBuilder::freeze() { return b_; }

ScalarValue::ScalarValue(BasisPtr basis, const Rational& rational_part) : basis_(std::move(basis)) {
  if (sgn(rational_part) != 0) coeffs_.push_back({0, rational_part});
}

ScalarValue ScalarValue::generator(BasisPtr basis, int index, const Rational& coeff) {
  ScalarValue v(std::move(basis));
  if (sgn(coeff) != 0) v.coeffs_.push_back({index, coeff});
  return v;
}

bool ScalarValue::is_rational() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0].first == 0);
}

Rational ScalarValue::rational_part() const { return coeff(0); }

Rational ScalarValue::coeff(int gen_index) const {
  for (const auto& [i, q] : coeffs_)
    if (i == gen_index) return q;
  return Rational(0);
}

void ScalarValue::set_coeff(int gen_index, const Rational& q) {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), gen_index,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != coeffs_.end() && it->first == gen_index) {
    if (sgn(q) == 0)
      coeffs_.erase(it);
    else
      it->second = q;
  } else if (sgn(q) != 0) {
    coeffs_.insert(it, {gen_index, q});
  }
}

namespace {
BasisPtr common_basis(const ScalarValue& a, const ScalarValue& b) {
  if (a.basis() == b.basis() || !b.basis()) return a.basis();
  if (!a.basis()) return b.basis();
  return merge_bases(a.basis(), b.basis());
}
}  // namespace

ScalarValue ScalarValue::operator+(const ScalarValue& o) const {
  BasisPtr basis = common_basis(*this, o);
  ScalarValue a = basis == basis_ ? *this : rebase(*this, basis);
  ScalarValue b = basis == o.basis_ ? o : rebase(o, basis);
  ScalarValue r(basis);
  std::size_t i = 0, j = 0;
  while (i < a.coeffs_.size() || j < b.coeffs_.size()) {
    if (j == b.coeffs_.size() || (i < a.coeffs_.size() && a.coeffs_[i].first < b.coeffs_[j].first)) {
      r.coeffs_.push_back(a.coeffs_[i++]);
    } else if (i == a.coeffs_.size() || b.coeffs_[j].first < a.coeffs_[i].first) {
      r.coeffs_.push_back(b.coeffs_[j++]);
    } else {
      Rational s = a.coeffs_[i].second + b.coeffs_[j].second;
      if (sgn(s) != 0) r.coeffs_.push_back({a.coeffs_[i].first, s});
      ++i;
      ++j;
    }
  }
  return r;
}

ScalarValue ScalarValue::operator-(const ScalarValue& o) const { return *this + (-o); }

ScalarValue ScalarValue::operator-() const {
  ScalarValue r(basis_);
  r.coeffs_ = coeffs_;
  for (auto& [i, q] : r.coeffs_) q = -q;
  return r;
}

ScalarValue ScalarValue::mul_rational(const Rational& q) const {
  ScalarValue r(basis_);
  if (sgn(q) == 0) return r;
  r.coeffs_ = coeffs_;
  for (auto& [i, c] : r.coeffs_) c *= q;
  return r;
}

std::optional<ScalarValue> ScalarValue::mul(const ScalarValue& o) const {
  BasisPtr basis = common_basis(*this, o);
  ScalarValue a = basis == basis_ ? *this : rebase(*this, basis);
  ScalarValue b = basis == o.basis_ ? o : rebase(o, basis);
  ScalarValue r(basis);
  for (const auto& [i, qa] : a.coeffs_)
    for (const auto& [j, qb] : b.coeffs_) {
      Rational q = qa * qb;
      int gi;
      const Generator& ga = basis->gen(i);
      const Generator& gb = basis->gen(j);
      if (ga.kind == GenKind::Unit) {
        gi = j;
      } else if (gb.kind == GenKind::Unit) {
        gi = i;
      } else if (ga.kind == GenKind::Sqrt && gb.kind == GenKind::Sqrt) {
        Integer prod = Integer(ga.radicand) * Integer(gb.radicand);
        auto [s, rad] = split_square(prod);
        q *= Rational(s);
        if (rad == 1) {
          gi = 0;
        } else {
          gi = basis->index_of_sqrt(rad.get_ui());
          if (gi < 0) return std::nullopt;
        }
      } else if ((ga.kind == GenKind::Named || ga.kind == GenKind::NamedPow) &&
                 (gb.kind == GenKind::Named || gb.kind == GenKind::NamedPow)) {
        std::string base_a = ga.kind == GenKind::Named ? ga.tag : ga.base;
        std::string base_b = gb.kind == GenKind::Named ? gb.tag : gb.base;
        if (base_a != base_b) return std::nullopt;
        int pow = (ga.kind == GenKind::Named ? 1 : ga.power) +
                  (gb.kind == GenKind::Named ? 1 : gb.power);
        gi = -1;
        for (std::size_t t = 0; t < basis->size(); ++t) {
          const Generator& g = basis->gen(static_cast<int>(t));
          if (g.kind == GenKind::NamedPow && g.base == base_a && g.power == pow)
            gi = static_cast<int>(t);
        }
        if (gi < 0) return std::nullopt;
      } else {
        return std::nullopt;
      }
      r.set_coeff(gi, r.coeff(gi) + q);
    }
  return r;
}

bool ScalarValue::operator==(const ScalarValue& o) const {
  if (basis_ == o.basis_) return coeffs_ == o.coeffs_;
  return (*this - o).is_zero();
}

bool ScalarValue::operator<(const ScalarValue& o) const {
  const auto& a = coeffs_;
  const auto& b = o.coeffs_;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    int c = cmp(a[i].second, b[i].second);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

int ScalarValue::sign() const {
  if (coeffs_.empty()) return 0;
  if (is_rational()) return sgn(coeffs_[0].second);
  for (mpfr_prec_t p = 128; p <= 4096; p *= 2) {
    num::Interval v = enclosure(p);
    if (v.is_positive()) return 1;
    if (v.is_negative()) return -1;
  }
  throw std::runtime_error(
      "ScalarValue::sign: enclosure refinement exhausted; basis may violate Q-independence");
}

num::Interval ScalarValue::enclosure(mpfr_prec_t prec) const {
  num::Interval acc(prec);
  for (const auto& [i, q] : coeffs_) {
    if (i == 0)
      acc = acc + num::Interval::from_rational(q, prec);
    else
      acc = acc + basis_->enclosure(i, prec).mul_rational(q);
  }
  return acc;
}

std::string ScalarValue::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, q] : coeffs_) {
    Rational a = q;
    if (!first) {
      os << (sgn(a) < 0 ? " - " : " + ");
      if (sgn(a) < 0) a = -a;
    }
    first = false;
    if (i == 0) {
      os << to_string(a);
    } else {
      const std::string& tag = basis_->gen(i).tag;
      if (a == 1)
        os << tag;
      else if (a == -1)
        os << "-" << tag;
      else
        os << to_string(a) << "*" << tag;
    }
  }
  return os.str();
}

ScalarValue rebase(const ScalarValue& v, const BasisPtr& target) {
  if (v.basis() == target) return v;
  ScalarValue r(target);
  for (const auto& [i, q] : v.coeffs()) {
    if (i == 0) {
      r.set_coeff(0, r.coeff(0) + q);
      continue;
    }
    int j = target->index_of(v.basis()->gen(i).tag);
    if (j < 0) throw std::invalid_argument("rebase: generator missing from target basis");
    r.set_coeff(j, r.coeff(j) + q);
  }
  return r;
}

BasisPtr merge_bases(const BasisPtr& a, const BasisPtr& b) {
  if (a == b) return a;
  BasisBuilder builder(a);
  for (std::size_t i = 1; i < b->size(); ++i) {
    const Generator& g = b->gen(static_cast<int>(i));
    switch (g.kind) {
      case GenKind::Sqrt:
        builder.add_sqrt(g.radicand);
        break;
      case GenKind::Named:
        builder.add_named(g.tag, g.value);
        break;
      case GenKind::NamedPow:
        builder.add_named_pow(g.tag, g.base, g.power);
        break;
      case GenKind::Unit:
        break;
    }
  }
  return builder.freeze();
}

}  // namespace hardy
