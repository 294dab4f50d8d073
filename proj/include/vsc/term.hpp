#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace vsc {

using Name = std::string;

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind { BVar, FVar, Abs, App, Sub };

// Immutable term with a locally nameless representation: bound variables are
// de Bruijn indices, free variables are names. Binder name hints are kept for
// printing only and are ignored by alpha_eq.
class Term {
public:
  TermKind kind;
  int index = 0;  // BVar
  Name name;      // FVar name; Abs/Sub binder hint
  TermPtr left;   // Abs body, App fun, Sub body (body is under the binder)
  TermPtr right;  // App arg, Sub arg (arg is outside the binder)

  static TermPtr bvar(int i);
  static TermPtr fvar(Name n);
  static TermPtr abs(Name hint, TermPtr body);
  static TermPtr app(TermPtr fun, TermPtr arg);
  static TermPtr sub(TermPtr body, Name hint, TermPtr arg);  // t[x<-u]

  // Named-style builders: bind the free variable x in body.
  static TermPtr lam(const Name& x, const TermPtr& body);
  static TermPtr esub(const TermPtr& body, const Name& x, const TermPtr& arg);
};

bool is_value(const TermPtr& t);  // Var (free or bound) or Abs

std::set<Name> free_vars(const TermPtr& t);

// Capture-avoiding substitution t{x<-v} of the free name x.
TermPtr meta_subst(const TermPtr& t, const Name& x, const TermPtr& v);

bool alpha_eq(const TermPtr& a, const TermPtr& b);

int node_count(const TermPtr& t);
int open_size(const TermPtr& t);      // |t|_o
int solvable_size(const TermPtr& t);  // |t|_s

// Loose indices >= cutoff get +d.
TermPtr shift(const TermPtr& t, int d, int cutoff = 0);

// Replace index 0 by the free name x (the inverse of close_binder).
TermPtr open_binder(const TermPtr& body, const Name& x);
// Bind the free name x as index 0.
TermPtr close_binder(const TermPtr& t, const Name& x);

// User-space fresh name: base, base1, base2, ... first one not in avoid.
Name fresh_name(const Name& base, const std::set<Name>& avoid);
// Reserved fresh name base'N from a process-wide counter. The parser never
// accepts these as free variables, so they cannot collide with user input.
Name reserved_fresh(const Name& base);
bool is_reserved_name(const Name& n);

// Substitution context L ::= <.> | L[x<-t]; bindings innermost-first, so
// plugging appends the chain outermost-last. Args keep the depth they had in
// the term they were peeled from.
struct SubstContext {
  std::vector<std::pair<Name, TermPtr>> bindings;
  size_t size() const { return bindings.size(); }
};

// Peel the maximal ES chain off the root. Outermost binding ends up last.
std::pair<SubstContext, TermPtr> peel_subst(const TermPtr& t);
TermPtr plug(const SubstContext& L, TermPtr core);

// All terms up to alpha-equivalence with <= max_nodes constructors, free
// variables from pool, binder hints canonical by depth. Size-major order,
// then Var < Abs < App < ESub, children left-to-right.
std::vector<TermPtr> enumerate_terms(int max_nodes, const std::vector<Name>& pool);

}  // namespace vsc
