#include "mfs/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace mfs {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  ScalarField parse() {
    ScalarField f = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ScalarField expression() {
    ScalarField lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  ScalarField term() {
    ScalarField lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  ScalarField unary() {
    if (accept('-')) {
      ScalarField arg = unary();
      // Fold negated literals so "(-2)" reads back as the constant it prints from.
      if (auto c = arg.constant_value(); c && literal_) return ScalarField(-*c);
      return -arg;
    }
    if (accept('+')) return unary();
    return power();
  }

  ScalarField power() {
    ScalarField base = primary();
    if (accept('^')) {
      ScalarField exponent = unary();
      literal_ = false;
      return pow(base, exponent);
    }
    return base;
  }

  ScalarField primary() {
    skip_space();
    literal_ = false;
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarField inner = expression();
      expect(')');
      // A parenthesized negated literal still counts as a literal.
      literal_ = literal_ && inner.constant_value().has_value();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  ScalarField number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
        pos_ = q;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    literal_ = true;
    return ScalarField(v);
  }

  std::vector<ScalarField> arguments(const std::string& name, std::size_t count) {
    expect('(');
    std::vector<ScalarField> args;
    args.push_back(expression());
    while (accept(',')) args.push_back(expression());
    expect(')');
    if (args.size() != count) {
      fail(name + " takes " + std::to_string(count) + " argument" + (count == 1 ? "" : "s"));
    }
    literal_ = false;
    return args;
  }

  ScalarField identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "x" || name == "y" || name == "z") {
      if (!options_.allow_xyz) {
        pos_ = start;
        fail("coordinate '" + name + "' not allowed here (use T)");
      }
      return coord(name[0] - 'x');
    }
    if (name == "T") {
      if (!options_.t_value) {
        pos_ = start;
        fail("T is only meaningful in functions of the flux variable");
      }
      return *options_.t_value;
    }
    if (name == "pi") return ScalarField(std::numbers::pi);
    if (name == "exp") return exp(arguments(name, 1)[0]);
    if (name == "log") return log(arguments(name, 1)[0]);
    if (name == "sin") return sin(arguments(name, 1)[0]);
    if (name == "cos") return cos(arguments(name, 1)[0]);
    if (name == "tan") return tan(arguments(name, 1)[0]);
    if (name == "sqrt") return sqrt(arguments(name, 1)[0]);
    if (name == "dx" || name == "dy" || name == "dz") return partial(arguments(name, 1)[0], name[1] - 'x');
    if (name == "atan2") {
      auto a = arguments(name, 2);
      return atan2(a[0], a[1]);
    }
    if (name == "subst") {
      auto a = arguments(name, 4);
      return substitute(a[0], a[1], a[2], a[3]);
    }
    if (name == "compose") {
      auto a = arguments(name, 2);
      return compose(a[0], a[1]);
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
  bool literal_ = false;
};

}  // namespace

ScalarField parse_scalar(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

ScalarField parse_univariate(std::string_view text) {
  ParseOptions options;
  options.allow_xyz = false;
  options.t_value = coord(0);
  return parse_scalar(text, options);
}

}  // namespace mfs
