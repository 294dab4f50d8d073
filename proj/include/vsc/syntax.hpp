#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "vsc/derivation.hpp"
#include "vsc/term.hpp"
#include "vsc/types.hpp"

namespace vsc {

struct SourceSpan {
  size_t start = 0;
  size_t end = 0;
};

struct ParseError : std::runtime_error {
  SourceSpan span;
  ParseError(SourceSpan s, const std::string& msg)
      : std::runtime_error(msg), span(s) {}
};

// Grammar: identifiers [a-zA-Z][a-zA-Z0-9_']*; abstraction `\x. t` or
// `λx. t` (body extends maximally right); application by juxtaposition,
// left-associative; explicit substitution `t[x <- u]` postfix, chaining
// left-to-right. Reserved identifiers (trailing 'N) are rejected where they
// occur free.
TermPtr parse_term(std::string_view input);

// parse_term(print_term(t)) is alpha-equivalent to t; minimal parentheses.
std::string print_term(const TermPtr& t);

// Multi types: `0` or `[A1, ..., An]`; ground `X`; arrow `M -o N`.
MultiType parse_type(std::string_view input);
std::string print_type(const MultiType& m);
std::string print_type(const LinearType& a);

std::string print_context(const TypeContext& g);

// Tree-structured JSON: {rule, ctx, term, type, linear, children}.
DerivPtr read_derivation(std::string_view input);
std::string write_derivation(const DerivPtr& d);

std::string print_judgment(const Judgment& j);

}  // namespace vsc
