#pragma once

// Textual interval syntax: "[a,b]", "(a,b]", "[a,b)", "(a,b)" with "-inf" /
// "inf" endpoints; unions are comma-separated ("[0,0.2],(0.5,0.6)"), and "{}"
// is the empty union. Endpoints use the space's element syntax, so lex points
// nest: "[(0,0.5),(1,0.25))".

#include <string>
#include <string_view>
#include <vector>

#include "ordercdf/errors.hpp"
#include "ordercdf/interval_union.hpp"
#include "ordercdf/spaces/text.hpp"

namespace ordercdf {

namespace detail {

class IntervalLexer {
 public:
  explicit IntervalLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  char take() {
    const char c = peek();
    if (c == '\0') fail("unexpected end of input");
    ++pos_;
    return c;
  }
  void expect(char c) {
    if (take() != c) fail(std::string("expected '") + c + "'");
  }

  // An endpoint token: a parenthesised group or text up to ',' / ']' / ')'.
  std::string_view endpoint() {
    skip_ws();
    const auto start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      int depth = 0;
      while (pos_ < s_.size()) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')' && --depth == 0) {
          ++pos_;
          break;
        }
        ++pos_;
      }
      if (depth != 0) fail("unbalanced parenthesis in endpoint");
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ')') ++pos_;
    }
    auto tok = text::trim(s_.substr(start, pos_ - start));
    if (tok.empty()) fail("empty endpoint");
    return tok;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("interval syntax error at offset " + std::to_string(pos_) + " in '" +
                      std::string(s_) + "': " + why);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

template <OrderedSpace S>
ExtPoint<S> parse_endpoint(const S& space, std::string_view tok) {
  if (tok == "-inf") return ExtPoint<S>::neg_inf();
  if (tok == "inf" || tok == "+inf") return ExtPoint<S>::pos_inf();
  return ExtPoint<S>(space.parse(tok));
}

template <OrderedSpace S>
IntervalOf<S> parse_one(const S& space, IntervalLexer& lx) {
  const char open = lx.take();
  if (open != '[' && open != '(') lx.fail("interval must start with '[' or '('");
  const auto a = parse_endpoint(space, lx.endpoint());
  lx.expect(',');
  const auto b = parse_endpoint(space, lx.endpoint());
  const char close = lx.take();
  if (close != ']' && close != ')') lx.fail("interval must end with ']' or ')'");
  if ((a.is_neg_inf() && open == '[') || (b.is_pos_inf() && close == ']')) {
    lx.fail("infinite endpoints must be open");
  }
  return {a, b, open == '[', close == ']'};
}

}  // namespace detail

template <OrderedSpace S>
IntervalOf<S> parse_interval(const S& space, std::string_view s) {
  detail::IntervalLexer lx(s);
  auto iv = detail::parse_one(space, lx);
  if (!lx.done()) lx.fail("trailing characters");
  return iv;
}

template <OrderedSpace S>
UnionOf<S> parse_union(const S& space, std::string_view s) {
  detail::IntervalLexer lx(s);
  if (lx.peek() == '{') {
    lx.take();
    lx.expect('}');
    if (!lx.done()) lx.fail("trailing characters");
    return UnionOf<S>{};
  }
  std::vector<IntervalOf<S>> ivs;
  ivs.push_back(detail::parse_one(space, lx));
  while (!lx.done()) {
    lx.expect(',');
    ivs.push_back(detail::parse_one(space, lx));
  }
  return normalize(space, std::move(ivs));
}

template <OrderedSpace S>
std::string format_endpoint(const S& space, const ExtPoint<S>& e) {
  if (e.is_neg_inf()) return "-inf";
  if (e.is_pos_inf()) return "inf";
  return space.format(e.point());
}

template <OrderedSpace S>
std::string format_interval(const S& space, const IntervalOf<S>& iv) {
  return std::string(iv.lo_closed ? "[" : "(") + format_endpoint(space, iv.lo) + "," +
         format_endpoint(space, iv.hi) + (iv.hi_closed ? "]" : ")");
}

template <OrderedSpace S>
std::string format_union(const S& space, const UnionOf<S>& u) {
  if (u.empty()) return "{}";
  std::string out;
  for (const auto& iv : u.intervals()) {
    if (!out.empty()) out += ",";
    out += format_interval(space, iv);
  }
  return out;
}

}  // namespace ordercdf
