#include "vsc/term.hpp"

#include <atomic>
#include <cassert>
#include <map>
#include <stdexcept>

namespace vsc {

namespace {
TermPtr mk(Term t) { return std::make_shared<Term>(std::move(t)); }
}  // namespace

TermPtr Term::bvar(int i) {
  Term t;
  t.kind = TermKind::BVar;
  t.index = i;
  return mk(std::move(t));
}

TermPtr Term::fvar(Name n) {
  Term t;
  t.kind = TermKind::FVar;
  t.name = std::move(n);
  return mk(std::move(t));
}

TermPtr Term::abs(Name hint, TermPtr body) {
  Term t;
  t.kind = TermKind::Abs;
  t.name = std::move(hint);
  t.left = std::move(body);
  return mk(std::move(t));
}

TermPtr Term::app(TermPtr fun, TermPtr arg) {
  Term t;
  t.kind = TermKind::App;
  t.left = std::move(fun);
  t.right = std::move(arg);
  return mk(std::move(t));
}

TermPtr Term::sub(TermPtr body, Name hint, TermPtr arg) {
  Term t;
  t.kind = TermKind::Sub;
  t.name = std::move(hint);
  t.left = std::move(body);
  t.right = std::move(arg);
  return mk(std::move(t));
}

TermPtr Term::lam(const Name& x, const TermPtr& body) {
  return abs(x, close_binder(body, x));
}

TermPtr Term::esub(const TermPtr& body, const Name& x, const TermPtr& arg) {
  return sub(close_binder(body, x), x, arg);
}

bool is_value(const TermPtr& t) {
  return t->kind == TermKind::BVar || t->kind == TermKind::FVar ||
         t->kind == TermKind::Abs;
}

static void free_vars_into(const TermPtr& t, std::set<Name>& out) {
  switch (t->kind) {
    case TermKind::BVar: return;
    case TermKind::FVar: out.insert(t->name); return;
    case TermKind::Abs: free_vars_into(t->left, out); return;
    case TermKind::App:
    case TermKind::Sub:
      free_vars_into(t->left, out);
      free_vars_into(t->right, out);
      return;
  }
}

std::set<Name> free_vars(const TermPtr& t) {
  std::set<Name> out;
  free_vars_into(t, out);
  return out;
}

TermPtr shift(const TermPtr& t, int d, int cutoff) {
  if (d == 0) return t;
  switch (t->kind) {
    case TermKind::BVar:
      return t->index >= cutoff ? Term::bvar(t->index + d) : t;
    case TermKind::FVar: return t;
    case TermKind::Abs: return Term::abs(t->name, shift(t->left, d, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t->left, d, cutoff), shift(t->right, d, cutoff));
    case TermKind::Sub:
      return Term::sub(shift(t->left, d, cutoff + 1), t->name,
                       shift(t->right, d, cutoff));
  }
  return t;
}

static TermPtr subst_name(const TermPtr& t, const Name& x, const TermPtr& v,
                          int depth) {
  switch (t->kind) {
    case TermKind::BVar: return t;
    case TermKind::FVar: return t->name == x ? shift(v, depth) : t;
    case TermKind::Abs: {
      auto b = subst_name(t->left, x, v, depth + 1);
      return b == t->left ? t : Term::abs(t->name, b);
    }
    case TermKind::App: {
      auto f = subst_name(t->left, x, v, depth);
      auto a = subst_name(t->right, x, v, depth);
      return (f == t->left && a == t->right) ? t : Term::app(f, a);
    }
    case TermKind::Sub: {
      auto b = subst_name(t->left, x, v, depth + 1);
      auto a = subst_name(t->right, x, v, depth);
      return (b == t->left && a == t->right) ? t : Term::sub(b, t->name, a);
    }
  }
  return t;
}

TermPtr meta_subst(const TermPtr& t, const Name& x, const TermPtr& v) {
  return subst_name(t, x, v, 0);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::BVar: return a->index == b->index;
    case TermKind::FVar: return a->name == b->name;
    case TermKind::Abs: return alpha_eq(a->left, b->left);
    case TermKind::App:
    case TermKind::Sub:
      return alpha_eq(a->left, b->left) && alpha_eq(a->right, b->right);
  }
  return false;
}

int node_count(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar: return 1;
    case TermKind::Abs: return 1 + node_count(t->left);
    case TermKind::App:
    case TermKind::Sub: return 1 + node_count(t->left) + node_count(t->right);
  }
  return 0;
}

int open_size(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar:
    case TermKind::Abs: return 0;
    case TermKind::App: return open_size(t->left) + open_size(t->right) + 1;
    case TermKind::Sub: return open_size(t->left) + open_size(t->right);
  }
  return 0;
}

int solvable_size(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::BVar:
    case TermKind::FVar: return 0;
    case TermKind::Abs: return solvable_size(t->left) + 1;
    case TermKind::App: return solvable_size(t->left) + open_size(t->right) + 1;
    case TermKind::Sub: return solvable_size(t->left) + open_size(t->right);
  }
  return 0;
}

static TermPtr open_at(const TermPtr& t, const Name& x, int depth) {
  switch (t->kind) {
    case TermKind::BVar:
      if (t->index == depth) return Term::fvar(x);
      if (t->index > depth) return Term::bvar(t->index - 1);
      return t;
    case TermKind::FVar: return t;
    case TermKind::Abs: return Term::abs(t->name, open_at(t->left, x, depth + 1));
    case TermKind::App:
      return Term::app(open_at(t->left, x, depth), open_at(t->right, x, depth));
    case TermKind::Sub:
      return Term::sub(open_at(t->left, x, depth + 1), t->name,
                       open_at(t->right, x, depth));
  }
  return t;
}

TermPtr open_binder(const TermPtr& body, const Name& x) {
  return open_at(body, x, 0);
}

static TermPtr close_at(const TermPtr& t, const Name& x, int depth) {
  switch (t->kind) {
    case TermKind::BVar:
      return t->index >= depth ? Term::bvar(t->index + 1) : t;
    case TermKind::FVar: return t->name == x ? Term::bvar(depth) : t;
    case TermKind::Abs: return Term::abs(t->name, close_at(t->left, x, depth + 1));
    case TermKind::App:
      return Term::app(close_at(t->left, x, depth), close_at(t->right, x, depth));
    case TermKind::Sub:
      return Term::sub(close_at(t->left, x, depth + 1), t->name,
                       close_at(t->right, x, depth));
  }
  return t;
}

TermPtr close_binder(const TermPtr& t, const Name& x) {
  return close_at(t, x, 0);
}

Name fresh_name(const Name& base, const std::set<Name>& avoid) {
  Name b = base;
  while (is_reserved_name(b)) b = b.substr(0, b.rfind('\''));
  if (!avoid.count(b) && b == base) return b;
  // Trailing primes would turn numeric candidates into reserved names.
  while (!b.empty() && b.back() == '\'') b.pop_back();
  if (b.empty()) b = "v";
  if (!avoid.count(b)) return b;
  for (int i = 1;; ++i) {
    Name cand = b + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

bool is_reserved_name(const Name& n) {
  auto tick = n.rfind('\'');
  if (tick == Name::npos || tick + 1 >= n.size()) return false;
  for (size_t i = tick + 1; i < n.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(n[i]))) return false;
  return true;
}

Name reserved_fresh(const Name& base) {
  static std::atomic<unsigned long> counter{0};
  Name b = base;
  while (is_reserved_name(b)) b = b.substr(0, b.rfind('\''));
  if (b.empty()) b = "v";
  return b + "'" + std::to_string(++counter);
}

std::pair<SubstContext, TermPtr> peel_subst(const TermPtr& t) {
  SubstContext L;
  TermPtr cur = t;
  // Root node is the outermost binding; the list stores innermost first.
  std::vector<std::pair<Name, TermPtr>> outermost_first;
  while (cur->kind == TermKind::Sub) {
    outermost_first.emplace_back(cur->name, cur->right);
    cur = cur->left;
  }
  L.bindings.assign(outermost_first.rbegin(), outermost_first.rend());
  return {std::move(L), cur};
}

TermPtr plug(const SubstContext& L, TermPtr core) {
  TermPtr cur = std::move(core);
  for (const auto& [hint, arg] : L.bindings) cur = Term::sub(cur, hint, arg);
  return cur;
}

namespace {

Name depth_hint(int k) {
  Name h(1, static_cast<char>('a' + k % 26));
  if (k >= 26) h += std::to_string(k / 26);
  return h;
}

struct Enumerator {
  const std::vector<Name>& pool;
  // memo[(n, k)] = all terms with exactly n nodes under k binders
  std::map<std::pair<int, int>, std::vector<TermPtr>> memo;

  const std::vector<TermPtr>& gen(int n, int k) {
    auto key = std::make_pair(n, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<TermPtr> out;
    if (n == 1) {
      for (int i = 0; i < k; ++i) out.push_back(Term::bvar(i));
      for (const auto& x : pool) out.push_back(Term::fvar(x));
    } else {
      for (const auto& b : gen(n - 1, k + 1))
        out.push_back(Term::abs(depth_hint(k), b));
      for (int i = 1; i <= n - 2; ++i)
        for (const auto& f : gen(i, k))
          for (const auto& a : gen(n - 1 - i, k))
            out.push_back(Term::app(f, a));
      for (int i = 1; i <= n - 2; ++i)
        for (const auto& b : gen(i, k + 1))
          for (const auto& a : gen(n - 1 - i, k))
            out.push_back(Term::sub(b, depth_hint(k), a));
    }
    return memo.emplace(key, std::move(out)).first->second;
  }
};

}  // namespace

std::vector<TermPtr> enumerate_terms(int max_nodes,
                                     const std::vector<Name>& pool) {
  if (max_nodes < 1) throw std::invalid_argument("max_nodes must be >= 1");
  Enumerator e{pool, {}};
  std::vector<TermPtr> out;
  for (int n = 1; n <= max_nodes; ++n) {
    const auto& layer = e.gen(n, 0);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace vsc
