#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mfs/expr.hpp"

namespace mfs {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  bool allow_xyz = true;
  /// What the identifier T stands for; T is rejected when unset.
  std::optional<ScalarField> t_value;
};

/// Infix grammar: + - * / ^ (right-associative, binds tighter than unary
/// minus), parentheses, decimal literals, x y z, T, pi, and the functions
/// exp log sin cos tan sqrt atan2 compose subst
/// dx dy dz. Accepts every string
/// produced by ScalarField::str() for fields built from those nodes.
ScalarField parse_scalar(std::string_view text, const ParseOptions& options = {});

/// A function of one variable written in T (for example "2*T" or
/// "exp(-T)"). The result reads its argument from the x slot, which is the
/// convention compose() expects.
ScalarField parse_univariate(std::string_view text);

}  // namespace mfs
