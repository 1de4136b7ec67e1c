// Concrete formula syntax: a recursive-descent parser and the canonical
// renderer. parse(render(f)) == f for every generator-produced formula.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tempobridge/formulas.hpp"

namespace tempobridge {

// Byte offsets [begin, end) into the parsed text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceSpan span)
      : std::runtime_error(msg), span_(span) {}
  [[nodiscard]] SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// Grammar (ASCII; unicode aliases accepted on input only):
//   state ::= "true" | ident | "!" state | state "&" state
//           | "E" path | "A" path | "AX" state | "AX_" ident state
//           | "(" state ")"
//   path  ::= state | "!" path | path "&" path | "X" path | "X_" ident path
//           | "[" path "U" path "]" | "[" path "W" path "]"
//           | "X_{" act "}" state
//           | "[" state "{" act "}U{" act "}" state "]"   (W likewise)
//           | "(" path ")"
//   act   ::= "tau" | ident | "!" act | act "&" act | "(" act ")"
// "!" and the prefix operators bind tighter than "&"; "&" associates left.
// "A" parses as the not-exists-not rewrite. A path operand that is built
// purely from state material parses as one embedded state formula.
// Keywords (true, tau, E, A, U, W, X, AX) are reserved; names must not
// begin with "X_" or "AX_" (those lex as operators). Aliases: ! for the
// negation sign, & for the conjunction sign, E/A for the quantifier signs,
// tau for the silent-label sign.
//
// The result conforms to `logic` (violations are reported as errors).
[[nodiscard]] StatePtr parse_formula(std::string_view text, LogicId logic);

// Canonical rendering: fully parenthesized conjunctions, "E[p U q]",
// "E X true", "X_a p", "X_{a} p", "[p {a}U{tau} q]", "AX_a p".
[[nodiscard]] std::string render_formula(const StatePtr& f);
[[nodiscard]] std::string render_path(const PathPtr& p);
[[nodiscard]] std::string render_act(const ActPtr& a);

}  // namespace tempobridge
