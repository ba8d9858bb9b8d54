#ifndef DIFFEOCALC_EXPR_PARSER_HPP
#define DIFFEOCALC_EXPR_PARSER_HPP

#include <set>
#include <string>

#include "diffeocalc/scalar_expr.hpp"

namespace diffeocalc {

/// Parses the expression grammar used by every configuration file:
/// rational literals `p/q`, coordinates as identifiers, `+ - * ^ exp( )`,
/// `^` only with a nonnegative integer exponent.
///
/// When `allowed` is non-null, any identifier outside the set is an error.
ScalarExpr parse_expr(const std::string& text,
                      const std::set<std::string>* allowed = nullptr);

}  // namespace diffeocalc

#endif
