#pragma once

#include <optional>

#include "vsc/reduction.hpp"
#include "vsc/term.hpp"

namespace vsc {

struct NormalFormClass {
  bool is_value = false;
  bool is_answer = false;  // ES chain over a value
  bool is_proper_inert = false;
  bool is_inert = false;
  bool is_fireball = false;
  bool is_solvable_fireball = false;
  bool is_full_fireball = false;
};

NormalFormClass classify(const TermPtr& t);

// Individual classifiers (grammar recursion).
bool is_inert_term(const TermPtr& t);         // i ::= x | i f | i[x<-ip]
bool is_proper_inert_term(const TermPtr& t);  // inert and not a variable
bool is_fireball(const TermPtr& t);           // f ::= v | ip | f[x<-ip]
bool is_solvable_fireball(const TermPtr& t);  // fs ::= i | \x.fs | fs[x<-ip]
bool is_full_fireball(const TermPtr& t);      // no Full redex

// Alternative proper-inert grammar ip ::= x f | ip f | i[x<-ip'], used only
// for the cross-check that both inert definitions agree.
bool is_inert_term_alt(const TermPtr& t);

// Full-normal dichotomy: full inert terms vs full values (answers over
// abstractions with full-normal bodies and proper-inert ES arguments).
bool is_full_inert(const TermPtr& t);
bool is_full_value(const TermPtr& t);

std::optional<std::pair<SubstContext, TermPtr>> decompose_answer(
    const TermPtr& t);

}  // namespace vsc
