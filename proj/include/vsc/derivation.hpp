#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsc/reduction.hpp"
#include "vsc/term.hpp"
#include "vsc/types.hpp"

namespace vsc {

enum class Rule { Ax, App, Lam, Es, Many };

// A judgment Gamma |- t : T; linear judgments carry a LinearType and occur
// only at ax/lam nodes (values), multi judgments everywhere else.
struct Judgment {
  TypeContext ctx;
  TermPtr term;
  bool linear = false;
  LinearTypeRef ltype;  // when linear
  MultiType mtype;      // when !linear
};

class Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

class Derivation {
public:
  Rule rule;
  Judgment conclusion;
  std::vector<DerivPtr> children;
  // Lam/Es nodes: the name the binder was opened with in the child judgment.
  // Reconstructed on deserialization; empty only for vacuous binders.
  Name binder_name;
};

struct DerivationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuleViolation {
  Path node_path;  // child indices from the root
  std::string message;
};

// Smart constructors: compute the conclusion from the parts. They throw
// DerivationError when the parts cannot form a rule instance.
DerivPtr dax(const Name& x, LinearTypeRef a);
// premises must all be linear judgments for the same value; subject needed
// explicitly so the 0-premise rule knows its term.
DerivPtr dmany(const TermPtr& value_subject, std::vector<DerivPtr> premises);
// body concludes (ctx, x:M) |- t : N; result ctx |- \hint.close(t,x) : M -o N.
DerivPtr dlam(const Name& x, const Name& hint, DerivPtr body);
DerivPtr dapp(DerivPtr fun, DerivPtr arg);
// body concludes (ctx, x:M) |- t : N and arg concludes Delta |- u : M.
DerivPtr des(const Name& x, const Name& hint, DerivPtr body, DerivPtr arg);

// Validates every node against the Fig.-1 rule shapes; empty result = ok.
std::vector<RuleViolation> check(const DerivPtr& d);

int size_general(const DerivPtr& d);  // |Phi|: all rules except many
int size_mult(const DerivPtr& d);     // |Phi|_m: lam and app only

// Rename a free variable throughout a derivation (contexts and terms).
DerivPtr rename_free(const DerivPtr& d, const Name& from, const Name& to);

// Lemma E.1.2: split a value derivation along M = m1 (+) m2. Premises are
// distributed first-fit in canonical type order.
std::pair<DerivPtr, DerivPtr> split_value(const DerivPtr& d,
                                          const MultiType& m1,
                                          const MultiType& m2);
// Lemma E.3.2 / E.3.1.
DerivPtr merge_value(const DerivPtr& d1, const DerivPtr& d2);
DerivPtr empty_value(const TermPtr& v);

// Lemma IV.2: from phi over (Gamma, x:N) |- t : M and psi over Delta |- v : N
// build Gamma (+) Delta |- t{x<-v} : M with |.|_m exactly additive.
DerivPtr substitute_derivation(const DerivPtr& phi, const Name& x,
                               const DerivPtr& psi);

// Lemma IV.3: from phi over Gamma |- t{x<-v} : M recover derivations for t
// (with x:N in context) and for v (with type N).
std::pair<DerivPtr, DerivPtr> remove_derivation(const DerivPtr& phi,
                                                const TermPtr& t,
                                                const Name& x,
                                                const TermPtr& v);

}  // namespace vsc
