#include "vsc/classify.hpp"

namespace vsc {

bool is_inert_term(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar: return true;
    case TermKind::App: return is_inert_term(t->left) && is_fireball(t->right);
    case TermKind::Sub:
      return is_inert_term(t->left) && is_proper_inert_term(t->right);
    default: return false;
  }
}

bool is_proper_inert_term(const TermPtr& t) {
  return t->kind != TermKind::BVar && t->kind != TermKind::FVar &&
         is_inert_term(t);
}

bool is_fireball(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar:
    case TermKind::Abs: return true;  // values
    case TermKind::App: return is_inert_term(t);
    case TermKind::Sub:
      return is_fireball(t->left) && is_proper_inert_term(t->right);
  }
  return false;
}

bool is_solvable_fireball(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar: return true;
    case TermKind::Abs: return is_solvable_fireball(t->left);
    case TermKind::App: return is_inert_term(t);
    case TermKind::Sub:
      return is_solvable_fireball(t->left) && is_proper_inert_term(t->right);
  }
  return false;
}

bool is_inert_term_alt(const TermPtr& t) {
  // i ::= x | ip with ip ::= x f | ip f | i[x<-ip']
  struct Alt {
    static bool proper(const TermPtr& t) {
      switch (t->kind) {
        case TermKind::App:
          return (t->left->kind == TermKind::BVar ||
                  t->left->kind == TermKind::FVar || proper(t->left)) &&
                 is_fireball(t->right);
        case TermKind::Sub:
          return inert(t->left) && proper(t->right);
        default: return false;
      }
    }
    static bool inert(const TermPtr& t) {
      return t->kind == TermKind::BVar || t->kind == TermKind::FVar ||
             proper(t);
    }
  };
  return Alt::inert(t);
}

bool is_full_fireball(const TermPtr& t) {
  return find_redexes(t, ContextClass::Full).empty();
}

bool is_full_inert(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar: return true;
    case TermKind::App:
      return is_full_inert(t->left) && is_full_fireball(t->right);
    case TermKind::Sub:
      return is_full_inert(t->left) && is_full_inert(t->right) &&
             is_proper_inert_term(t->right);
    default: return false;
  }
}

bool is_full_value(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Abs: return is_full_fireball(t->left);
    case TermKind::Sub:
      return is_full_value(t->left) && is_full_inert(t->right) &&
             is_proper_inert_term(t->right);
    default: return false;
  }
}

std::optional<std::pair<SubstContext, TermPtr>> decompose_answer(
    const TermPtr& t) {
  auto [L, core] = peel_subst(t);
  if (!is_value(core)) return std::nullopt;
  return std::make_pair(std::move(L), core);
}

NormalFormClass classify(const TermPtr& t) {
  NormalFormClass c;
  c.is_value = is_value(t);
  c.is_answer = decompose_answer(t).has_value();
  c.is_inert = is_inert_term(t);
  c.is_proper_inert = is_proper_inert_term(t);
  c.is_fireball = is_fireball(t);
  c.is_solvable_fireball = is_solvable_fireball(t);
  c.is_full_fireball = is_full_fireball(t);
  return c;
}

}  // namespace vsc
