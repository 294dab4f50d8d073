#include "vsc/reduction.hpp"

namespace vsc {

bool operator==(const RedexPosition& a, const RedexPosition& b) {
  return a.kind == b.kind && a.path == b.path;
}

// Replace index 0 of body by v and move body from under one binder to under
// n binders (the ES chain that migrates outside).
static TermPtr subst_expo(const TermPtr& t, const TermPtr& v, int n,
                          int cutoff) {
  switch (t->kind) {
    case TermKind::BVar:
      if (t->index == cutoff) return shift(v, cutoff);
      if (t->index > cutoff) return Term::bvar(t->index - 1 + n);
      return t;
    case TermKind::FVar: return t;
    case TermKind::Abs:
      return Term::abs(t->name, subst_expo(t->left, v, n, cutoff + 1));
    case TermKind::App:
      return Term::app(subst_expo(t->left, v, n, cutoff),
                       subst_expo(t->right, v, n, cutoff));
    case TermKind::Sub:
      return Term::sub(subst_expo(t->left, v, n, cutoff + 1), t->name,
                       subst_expo(t->right, v, n, cutoff));
  }
  return t;
}

TermPtr root_mult(const TermPtr& t) {
  if (t->kind != TermKind::App) return nullptr;
  auto [L, core] = peel_subst(t->left);
  if (core->kind != TermKind::Abs) return nullptr;
  int n = static_cast<int>(L.size());
  return plug(L, Term::sub(core->left, core->name, shift(t->right, n)));
}

TermPtr root_expo(const TermPtr& t) {
  if (t->kind != TermKind::Sub) return nullptr;
  auto [L, core] = peel_subst(t->right);
  if (!is_value(core)) return nullptr;
  int n = static_cast<int>(L.size());
  return plug(L, subst_expo(t->left, core, n, 0));
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (int sel : p) {
    switch (cur->kind) {
      case TermKind::Abs:
        if (sel != 0) return nullptr;
        cur = cur->left;
        break;
      case TermKind::App:
      case TermKind::Sub:
        if (sel == 0)
          cur = cur->left;
        else if (sel == 1)
          cur = cur->right;
        else
          return nullptr;
        break;
      default: return nullptr;
    }
  }
  return cur;
}

static TermPtr reduce_at_rec(const TermPtr& t, const Path& p, size_t i,
                             StepKind kind) {
  if (i == p.size()) return kind == StepKind::Mult ? root_mult(t) : root_expo(t);
  int sel = p[i];
  switch (t->kind) {
    case TermKind::Abs: {
      if (sel != 0) return nullptr;
      auto b = reduce_at_rec(t->left, p, i + 1, kind);
      return b ? Term::abs(t->name, b) : nullptr;
    }
    case TermKind::App: {
      auto c = reduce_at_rec(sel == 0 ? t->left : t->right, p, i + 1, kind);
      if (!c) return nullptr;
      return sel == 0 ? Term::app(c, t->right) : Term::app(t->left, c);
    }
    case TermKind::Sub: {
      auto c = reduce_at_rec(sel == 0 ? t->left : t->right, p, i + 1, kind);
      if (!c) return nullptr;
      return sel == 0 ? Term::sub(c, t->name, t->right)
                      : Term::sub(t->left, t->name, c);
    }
    default: return nullptr;
  }
}

TermPtr reduce_at(const TermPtr& t, const Path& p, StepKind kind) {
  return reduce_at_rec(t, p, 0, kind);
}

namespace {

// Traversal mode: Spine is the head part of a solving context (may still
// cross lambdas); Weak is an open context (no lambdas below); Everywhere is
// a full context.
enum class Mode { Spine, Weak, Everywhere };

Mode child_mode(Mode m, TermKind k, int sel) {
  if (m == Mode::Everywhere) return m;
  if (m == Mode::Spine) {
    if (k == TermKind::Abs) return Mode::Spine;            // \x.S
    if (sel == 0) return Mode::Spine;                      // St, S[x<-t]
    return Mode::Weak;                                     // tO, t[x<-O]
  }
  return Mode::Weak;  // O has no lambda production; Abs handled by caller
}

bool may_descend(Mode m, TermKind k) {
  if (k == TermKind::Abs) return m != Mode::Weak;
  return true;
}

void collect(const TermPtr& t, Mode mode, Path& path,
             std::optional<StepKind> kind,
             std::vector<std::pair<RedexPosition, TermPtr>>& out,
             const TermPtr& root) {
  if ((!kind || *kind == StepKind::Mult) && t->kind == TermKind::App) {
    if (root_mult(t))
      out.push_back({{path, StepKind::Mult},
                     reduce_at(root, path, StepKind::Mult)});
  }
  if ((!kind || *kind == StepKind::Expo) && t->kind == TermKind::Sub) {
    if (root_expo(t))
      out.push_back({{path, StepKind::Expo},
                     reduce_at(root, path, StepKind::Expo)});
  }
  switch (t->kind) {
    case TermKind::Abs:
      if (may_descend(mode, TermKind::Abs)) {
        path.push_back(0);
        collect(t->left, child_mode(mode, TermKind::Abs, 0), path, kind, out,
                root);
        path.pop_back();
      }
      break;
    case TermKind::App:
    case TermKind::Sub:
      path.push_back(0);
      collect(t->left, child_mode(mode, t->kind, 0), path, kind, out, root);
      path.back() = 1;
      collect(t->right, child_mode(mode, t->kind, 1), path, kind, out, root);
      path.pop_back();
      break;
    default: break;
  }
}

Mode start_mode(ContextClass cls) {
  switch (cls) {
    case ContextClass::Open: return Mode::Weak;
    case ContextClass::Solving: return Mode::Spine;
    case ContextClass::Full: return Mode::Everywhere;
  }
  return Mode::Weak;
}

}  // namespace

std::vector<std::pair<RedexPosition, TermPtr>> find_redexes(
    const TermPtr& t, ContextClass cls, std::optional<StepKind> kind) {
  std::vector<std::pair<RedexPosition, TermPtr>> out;
  Path path;
  collect(t, start_mode(cls), path, kind, out, t);
  return out;
}

bool path_valid_for_class(const TermPtr& t, const Path& p, ContextClass cls) {
  Mode mode = start_mode(cls);
  TermPtr cur = t;
  for (int sel : p) {
    switch (cur->kind) {
      case TermKind::Abs:
        if (sel != 0 || !may_descend(mode, TermKind::Abs)) return false;
        mode = child_mode(mode, TermKind::Abs, 0);
        cur = cur->left;
        break;
      case TermKind::App:
      case TermKind::Sub:
        if (sel != 0 && sel != 1) return false;
        mode = child_mode(mode, cur->kind, sel);
        cur = sel == 0 ? cur->left : cur->right;
        break;
      default: return false;
    }
  }
  return true;
}

std::optional<std::pair<TermPtr, RedexPosition>> step(const TermPtr& t,
                                                      ContextClass cls) {
  auto rs = find_redexes(t, cls);
  if (rs.empty()) return std::nullopt;
  return std::make_pair(rs.front().second, rs.front().first);
}

EvalTrace evaluate(const TermPtr& t, ContextClass cls, int fuel,
                   Policy policy) {
  EvalTrace tr;
  tr.initial = t;
  tr.cls = cls;
  tr.policy = policy;
  TermPtr cur = t;
  for (int i = 0; i < fuel; ++i) {
    auto rs = find_redexes(cur, cls);
    if (rs.empty()) {
      tr.status = TraceStatus::Normal;
      return tr;
    }
    const auto& pick = policy == Policy::Leftmost ? rs.front() : rs.back();
    cur = pick.second;
    tr.steps.push_back({pick.first, cur});
    (pick.first.kind == StepKind::Mult ? tr.m_count : tr.e_count)++;
  }
  tr.status = find_redexes(cur, cls).empty() ? TraceStatus::Normal
                                             : TraceStatus::FuelExhausted;
  return tr;
}

TermPtr plotkin_step(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar: return nullptr;
    case TermKind::Abs: {
      auto b = plotkin_step(t->left);
      return b ? Term::abs(t->name, b) : nullptr;
    }
    case TermKind::App: {
      if (t->left->kind == TermKind::Abs && is_value(t->right))
        return subst_expo(t->left->left, t->right, 0, 0);
      if (auto f = plotkin_step(t->left)) return Term::app(f, t->right);
      if (auto a = plotkin_step(t->right)) return Term::app(t->left, a);
      return nullptr;
    }
    case TermKind::Sub: return nullptr;  // not a lambda-Plot term
  }
  return nullptr;
}

bool check_simulation(const TermPtr& t) {
  auto t1 = plotkin_step(t);
  if (!t1) return true;
  for (const auto& [p1, r1] : find_redexes(t, ContextClass::Full, StepKind::Mult))
    for (const auto& [p2, r2] :
         find_redexes(r1, ContextClass::Full, StepKind::Expo))
      if (alpha_eq(r2, t1)) return true;
  return false;
}

}  // namespace vsc
