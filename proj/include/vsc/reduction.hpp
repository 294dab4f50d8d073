#pragma once

#include <optional>
#include <vector>

#include "vsc/term.hpp"

namespace vsc {

enum class StepKind { Mult, Expo };
enum class ContextClass { Open, Solving, Full };
enum class Policy { Leftmost, Rightmost };

// Child selectors from the root: 0 = fun/body, 1 = arg.
using Path = std::vector<int>;

struct RedexPosition {
  Path path;
  StepKind kind;
};

bool operator==(const RedexPosition& a, const RedexPosition& b);

enum class TraceStatus { Normal, FuelExhausted };

struct EvalStep {
  RedexPosition position;
  TermPtr result;
};

struct EvalTrace {
  TermPtr initial;
  std::vector<EvalStep> steps;
  int m_count = 0;
  int e_count = 0;
  TraceStatus status = TraceStatus::Normal;
  ContextClass cls = ContextClass::Open;
  Policy policy = Policy::Leftmost;

  TermPtr final_term() const {
    return steps.empty() ? initial : steps.back().result;
  }
  // Term before step i.
  TermPtr term_before(size_t i) const {
    return i == 0 ? initial : steps[i - 1].result;
  }
};

// Root rules at a distance. Return the reduct or nullptr on no match. The
// argument may contain loose indices (it can be a subterm under binders).
TermPtr root_mult(const TermPtr& t);  // L<\x.b> u |-> L<b[x<-u]>
TermPtr root_expo(const TermPtr& t);  // b[x<-L<v>] |-> L<b{x<-v}>

// Subterm at a path; nullptr if the path is invalid.
TermPtr subterm_at(const TermPtr& t, const Path& p);
// Whole-term reduct of firing the root rule of the given kind at the path.
TermPtr reduce_at(const TermPtr& t, const Path& p, StepKind kind);
bool path_valid_for_class(const TermPtr& t, const Path& p, ContextClass cls);

// All redexes valid in the class, leftmost-outermost preorder, paired with
// the full reduct.
std::vector<std::pair<RedexPosition, TermPtr>> find_redexes(
    const TermPtr& t, ContextClass cls,
    std::optional<StepKind> kind = std::nullopt);

std::optional<std::pair<TermPtr, RedexPosition>> step(const TermPtr& t,
                                                      ContextClass cls);

inline constexpr int kDefaultFuel = 10000;

EvalTrace evaluate(const TermPtr& t, ContextClass cls, int fuel,
                   Policy policy = Policy::Leftmost);

// One leftmost beta-v step of Plotkin's calculus (ES-free terms).
TermPtr plotkin_step(const TermPtr& t);
// Each beta-v step from t is matched by a Full m-step then a Full e-step
// reaching an alpha-equal term; checks one step from t.
bool check_simulation(const TermPtr& t);

}  // namespace vsc
