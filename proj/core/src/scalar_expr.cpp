#include "diffeocalc/scalar_expr.hpp"

#include <sstream>

namespace diffeocalc {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(const std::string& name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.exponents_[name] = exponent;
  return m;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : exponents_) d += e;
  return d;
}

unsigned Monomial::exponent_of(const std::string& name) const {
  auto it = exponents_.find(name);
  return it == exponents_.end() ? 0u : it->second;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial out = *this;
  for (const auto& [v, e] : other.exponents_) out.exponents_[v] += e;
  return out;
}

std::optional<std::pair<unsigned, Monomial>> Monomial::lower_exponent(
    const std::string& v) const {
  auto it = exponents_.find(v);
  if (it == exponents_.end()) return std::nullopt;
  Monomial reduced = *this;
  if (it->second == 1)
    reduced.exponents_.erase(v);
  else
    reduced.exponents_[v] -= 1;
  return std::make_pair(it->second, reduced);
}

Rational Monomial::evaluate(const std::map<std::string, Rational>& point) const {
  Rational out(1);
  for (const auto& [v, e] : exponents_) {
    auto it = point.find(v);
    if (it == point.end()) throw Error("unbound coordinate '" + v + "'");
    Rational p(1);
    for (unsigned i = 0; i < e; ++i) p *= it->second;
    out *= p;
  }
  return out;
}

bool Monomial::operator<(const Monomial& other) const {
  // Graded order: first by total degree, then lexicographically.
  const unsigned da = total_degree(), db = other.total_degree();
  if (da != db) return da < db;
  return exponents_ < other.exponents_;
}

std::string Monomial::str() const {
  if (exponents_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : exponents_) {
    if (!first) os << "*";
    first = false;
    os << v;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_[Monomial()] = c;
}

Polynomial Polynomial::variable(const std::string& name) {
  return term(Rational(1), Monomial::variable(name));
}

Polynomial Polynomial::term(const Rational& c, const Monomial& m) {
  Polynomial p;
  if (c != 0) p.terms_[m] = c;
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw Error("polynomial is not constant: " + str());
  return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma.times(mb), ca * cb);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial out(Rational(1));
  for (unsigned i = 0; i < e; ++i) out = out * (*this);
  return out;
}

Polynomial Polynomial::differentiate(const std::string& v) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    auto lowered = m.lower_exponent(v);
    if (lowered) out.add_term(lowered->second, c * Rational(lowered->first));
  }
  return out;
}

Polynomial Polynomial::substitute(const std::map<std::string, Rational>& bindings) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Rational factor = c;
    Monomial rest;
    for (const auto& [v, e] : m.exponents()) {
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        rest = rest.times(Monomial::variable(v, e));
      } else {
        for (unsigned i = 0; i < e; ++i) factor *= it->second;
      }
    }
    out.add_term(rest, factor);
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
  Rational out(0);
  for (const auto& [m, c] : terms_) out += c * m.evaluate(point);
  return out;
}

std::set<std::string> Polynomial::coordinates() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exponents()) out.insert(v);
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const Rational a = c < 0 ? Rational(-c) : c;
    if (m.is_one()) {
      os << rational_to_string(a);
    } else {
      if (a != 1) os << rational_to_string(a) << "*";
      os << m.str();
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ScalarExpr

ScalarExpr::ScalarExpr(const Rational& c) {
  if (c != 0) terms_[Key{Monomial(), Polynomial()}] = c;
}

ScalarExpr::ScalarExpr(const Polynomial& p) {
  for (const auto& [m, c] : p.terms()) terms_[Key{m, Polynomial()}] = c;
}

ScalarExpr ScalarExpr::variable(const std::string& name) {
  return ScalarExpr(Polynomial::variable(name));
}

ScalarExpr ScalarExpr::exp_of(const ScalarExpr& argument) {
  if (!argument.is_polynomial())
    throw Error("exp argument must be exp-free: " + argument.str());
  const Polynomial p = argument.as_polynomial();
  ScalarExpr out;
  out.terms_[Key{Monomial(), p}] = Rational(1);  // exp(0) folds to the plain term
  return out;
}

void ScalarExpr::add_term(const Key& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ScalarExpr ScalarExpr::operator+(const ScalarExpr& other) const {
  ScalarExpr out = *this;
  for (const auto& [k, c] : other.terms_) out.add_term(k, c);
  return out;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

ScalarExpr ScalarExpr::operator-(const ScalarExpr& other) const {
  ScalarExpr out = *this;
  for (const auto& [k, c] : other.terms_) out.add_term(k, -c);
  return out;
}

ScalarExpr ScalarExpr::operator*(const ScalarExpr& other) const {
  ScalarExpr out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : other.terms_)
      out.add_term(Key{ka.mono.times(kb.mono), ka.exp_arg + kb.exp_arg}, ca * cb);
  return out;
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr out;
  for (const auto& [k, c] : terms_) out.terms_[k] = -c;
  return out;
}

ScalarExpr ScalarExpr::pow(unsigned e) const {
  ScalarExpr out(Rational(1));
  for (unsigned i = 0; i < e; ++i) out = out * (*this);
  return out;
}

ScalarExpr ScalarExpr::differentiate(const std::string& v) const {
  // d(c * m * exp(p)) = c * dm/dv * exp(p) + c * m * dp/dv * exp(p)
  ScalarExpr out;
  for (const auto& [k, c] : terms_) {
    auto lowered = k.mono.lower_exponent(v);
    if (lowered)
      out.add_term(Key{lowered->second, k.exp_arg}, c * Rational(lowered->first));
    const Polynomial dp = k.exp_arg.differentiate(v);
    for (const auto& [m, pc] : dp.terms())
      out.add_term(Key{k.mono.times(m), k.exp_arg}, c * pc);
  }
  return out;
}

ScalarExpr ScalarExpr::substitute(const std::map<std::string, Rational>& bindings) const {
  ScalarExpr out;
  for (const auto& [k, c] : terms_) {
    Rational factor = c;
    Monomial rest;
    for (const auto& [v, e] : k.mono.exponents()) {
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        rest = rest.times(Monomial::variable(v, e));
      } else {
        for (unsigned i = 0; i < e; ++i) factor *= it->second;
      }
    }
    const Polynomial arg = k.exp_arg.substitute(bindings);
    if (arg.is_constant() && arg.constant_value() == 0) {
      out.add_term(Key{rest, Polynomial()}, factor);
    } else {
      out.add_term(Key{rest, arg}, factor);
    }
  }
  return out;
}

ScalarValue ScalarExpr::evaluate(const std::map<std::string, Rational>& point) const {
  for (const std::string& v : free_coordinates())
    if (!point.count(v)) throw Error("unbound coordinate '" + v + "'");
  const ScalarExpr constant = substitute(point);

  ScalarValue out;
  if (constant.is_rational_constant()) {
    out.exact = true;
    out.rational = constant.as_rational();
    out.real = to_real(out.rational);
    return out;
  }
  out.exact = false;
  out.real = Real(0);
  for (const auto& [k, c] : constant.terms_) {
    // fully bound: monomial is empty, exp argument is a constant
    const Rational arg = k.exp_arg.constant_value();
    out.real += to_real(c) * exp(to_real(arg));
  }
  return out;
}

bool ScalarExpr::is_polynomial() const {
  for (const auto& [k, c] : terms_)
    if (!k.exp_arg.is_zero()) return false;
  return true;
}

Polynomial ScalarExpr::as_polynomial() const {
  Polynomial out;
  for (const auto& [k, c] : terms_) {
    if (!k.exp_arg.is_zero())
      throw Error("expression has exp terms, not a polynomial: " + str());
    out = out + Polynomial::term(c, k.mono);
  }
  return out;
}

bool ScalarExpr::is_rational_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& [k, c] = *terms_.begin();
  return k.mono.is_one() && k.exp_arg.is_zero();
}

Rational ScalarExpr::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational_constant())
    throw Error("expression is not an exp-free constant: " + str());
  return terms_.begin()->second;
}

bool ScalarExpr::is_structurally_nonvanishing() const {
  return terms_.size() == 1 && terms_.begin()->first.mono.is_one();
}

ScalarExpr ScalarExpr::unit_inverse() const {
  if (terms_.size() != 1 || !terms_.begin()->first.mono.is_one())
    throw Error("not a unit of the coefficient ring: " + str());
  const auto& [k, c] = *terms_.begin();
  ScalarExpr out;
  out.terms_[Key{Monomial(), -k.exp_arg}] = Rational(1) / c;
  return out;
}

std::set<std::string> ScalarExpr::free_coordinates() const {
  std::set<std::string> out;
  for (const auto& [k, c] : terms_) {
    for (const auto& [v, e] : k.mono.exponents()) out.insert(v);
    for (const std::string& v : k.exp_arg.coordinates()) out.insert(v);
  }
  return out;
}

std::string ScalarExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const Rational a = c < 0 ? Rational(-c) : c;
    bool emitted = false;
    if (a != 1 || (k.mono.is_one() && k.exp_arg.is_zero())) {
      os << rational_to_string(a);
      emitted = true;
    }
    if (!k.mono.is_one()) {
      if (emitted) os << "*";
      os << k.mono.str();
      emitted = true;
    }
    if (!k.exp_arg.is_zero()) {
      if (emitted) os << "*";
      os << "exp(" << k.exp_arg.str() << ")";
    }
  }
  return os.str();
}

}  // namespace diffeocalc
