#include "yamabe/expr/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <utility>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

constexpr std::array<std::pair<std::string_view, Elementary>, 9> kFunctions{{
    {"sin", Elementary::Sin},
    {"cos", Elementary::Cos},
    {"tan", Elementary::Tan},
    {"exp", Elementary::Exp},
    {"log", Elementary::Log},
    {"sqrt", Elementary::Sqrt},
    {"sinh", Elementary::Sinh},
    {"cosh", Elementary::Cosh},
    {"tanh", Elementary::Tanh},
}};

std::optional<Elementary> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions) {
    if (n == name) return f;
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view src, std::span<const std::string> declared)
      : src_(src), declared_(declared) {}

  Expr parse_all() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_sum();
    skip_space();
    if (pos_ < src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + parse_product();
      } else if (accept('-')) {
        lhs = lhs - parse_product();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return pow(std::move(base), parse_unary());
    return base;
  }

  Expr parse_atom() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || end != src_.data() + pos_) throw ParseError("malformed number", start);
    return Expr::number(value);
  }

  Expr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      auto fn = lookup_function(name);
      if (!fn) throw ParseError("unknown function '" + std::string(name) + "'", start);
      ++pos_;
      Expr arg = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return Expr::call(*fn, std::move(arg));
    }
    if (std::find(declared_.begin(), declared_.end(), name) == declared_.end()) {
      throw ParseError("unknown symbol '" + std::string(name) + "'", start);
    }
    return Expr::symbol(std::string(name));
  }

  std::string_view src_;
  std::span<const std::string> declared_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source, std::span<const std::string> declared) {
  return Parser(source, declared).parse_all();
}

}  // namespace yamabe
