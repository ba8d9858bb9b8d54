#ifndef DIFFEOCALC_SCALAR_EXPR_HPP
#define DIFFEOCALC_SCALAR_EXPR_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diffeocalc/rational.hpp"

namespace diffeocalc {

/// Power product of coordinates, e.g. x^2*y. The empty monomial is 1.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, unsigned exponent = 1);

  bool is_one() const { return exponents_.empty(); }
  unsigned total_degree() const;
  unsigned exponent_of(const std::string& name) const;
  const std::map<std::string, unsigned>& exponents() const { return exponents_; }

  Monomial times(const Monomial& other) const;
  /// d/dv: returns {old exponent, monomial with exponent lowered by one},
  /// or nullopt when v does not occur.
  std::optional<std::pair<unsigned, Monomial>> lower_exponent(const std::string& v) const;

  Rational evaluate(const std::map<std::string, Rational>& point) const;

  bool operator==(const Monomial& other) const { return exponents_ == other.exponents_; }
  bool operator<(const Monomial& other) const;

  std::string str() const;

 private:
  std::map<std::string, unsigned> exponents_;  // only positive exponents stored
};

/// Polynomial over Q in normal form: sorted monomial -> nonzero coefficient.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  static Polynomial variable(const std::string& name);
  static Polynomial term(const Rational& c, const Monomial& m);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  unsigned total_degree() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial pow(unsigned e) const;

  Polynomial differentiate(const std::string& v) const;
  Polynomial substitute(const std::map<std::string, Rational>& bindings) const;
  Rational evaluate(const std::map<std::string, Rational>& point) const;

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::set<std::string> coordinates() const;

  bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }
  bool operator<(const Polynomial& other) const { return terms_ < other.terms_; }

  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Result of evaluating a ScalarExpr at a fully bound point: exact
/// rational when the expression is exp-free, floating otherwise.
struct ScalarValue {
  bool exact = true;
  Rational rational;  // meaningful when exact
  Real real;          // always set

  double as_double() const { return static_cast<double>(real); }
};

/// Element of the coefficient ring Q[x...] * exp(Q[x...]): a finite sum
/// of terms c * m * exp(p) with c a nonzero rational, m a monomial and
/// p a polynomial. The representation is the normal form itself: terms
/// are keyed by (m, p) in canonical order and zero coefficients are
/// never stored, so structural equality decides semantic equality
/// (exp of distinct polynomial arguments are linearly independent over
/// the polynomials).
class ScalarExpr {
 public:
  ScalarExpr() = default;  // zero
  ScalarExpr(int c) : ScalarExpr(Rational(c)) {}
  explicit ScalarExpr(const Rational& c);
  explicit ScalarExpr(const Polynomial& p);
  static ScalarExpr variable(const std::string& name);
  /// exp(argument); the argument must be exp-free (a polynomial).
  static ScalarExpr exp_of(const ScalarExpr& argument);

  bool is_zero() const { return terms_.empty(); }

  ScalarExpr operator+(const ScalarExpr& other) const;
  ScalarExpr operator-(const ScalarExpr& other) const;
  ScalarExpr operator*(const ScalarExpr& other) const;
  ScalarExpr operator-() const;
  ScalarExpr& operator+=(const ScalarExpr& other);
  ScalarExpr pow(unsigned e) const;

  /// Exact partial derivative; closed in the ring.
  ScalarExpr differentiate(const std::string& v) const;

  /// Exact partial substitution of coordinates by rationals; unbound
  /// coordinates remain symbolic.
  ScalarExpr substitute(const std::map<std::string, Rational>& bindings) const;

  /// Full evaluation. Every free coordinate must be bound, otherwise an
  /// Error naming the first missing coordinate is thrown.
  ScalarValue evaluate(const std::map<std::string, Rational>& point) const;

  bool is_polynomial() const;
  Polynomial as_polynomial() const;  // throws when exp terms are present
  bool is_rational_constant() const;
  Rational as_rational() const;  // throws when not an exp-free constant

  /// True when the normal form is a single term c*exp(p) with no
  /// monomial part; such a coefficient never vanishes.
  bool is_structurally_nonvanishing() const;

  /// Multiplicative inverse, defined exactly for units c*exp(p) of the
  /// ring; throws otherwise.
  ScalarExpr unit_inverse() const;

  std::set<std::string> free_coordinates() const;

  bool operator==(const ScalarExpr& other) const { return terms_ == other.terms_; }
  bool operator!=(const ScalarExpr& other) const { return !(*this == other); }
  bool operator<(const ScalarExpr& other) const { return terms_ < other.terms_; }

  std::string str() const;

 private:
  struct Key {
    Monomial mono;
    Polynomial exp_arg;  // zero polynomial <=> no exp factor
    bool operator<(const Key& other) const {
      if (mono < other.mono) return true;
      if (other.mono < mono) return false;
      return exp_arg < other.exp_arg;
    }
    bool operator==(const Key& other) const {
      return mono == other.mono && exp_arg == other.exp_arg;
    }
  };

  void add_term(const Key& key, const Rational& c);

  std::map<Key, Rational> terms_;
};

inline ScalarExpr operator*(const Rational& c, const ScalarExpr& e) {
  return ScalarExpr(c) * e;
}

}  // namespace diffeocalc

#endif
