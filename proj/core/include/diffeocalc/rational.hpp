#ifndef DIFFEOCALC_RATIONAL_HPP
#define DIFFEOCALC_RATIONAL_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace diffeocalc {

/// Exact rational scalar: arbitrary-precision integers, positive
/// denominator, always in lowest terms.
using Rational = boost::multiprecision::cpp_rational;

/// Arbitrary-precision integer.
using Integer = boost::multiprecision::cpp_int;

/// Floating type used whenever a value leaves the rational world
/// (evaluation of exp). 50 decimal digits, well above the promised
/// 50 significant bits.
using Real = boost::multiprecision::cpp_bin_float_50;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Rejected input (space files, expressions, structural invariants), as
/// opposed to a failure inside a computation.
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

inline Real to_real(const Rational& r) {
  return Real(boost::multiprecision::numerator(r)) /
         Real(boost::multiprecision::denominator(r));
}

/// Parses "p", "-p" or "p/q" with integer p, q (q > 0 after
/// normalization). Anything else is rejected.
Rational parse_rational(const std::string& text);

/// Renders in lowest terms, "p" or "p/q".
std::string rational_to_string(const Rational& r);

}  // namespace diffeocalc

#endif
