#include "vsc/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace vsc {

MultiType::MultiType(std::vector<LinearTypeRef> es) : elems(std::move(es)) {
  std::sort(elems.begin(), elems.end(),
            [](const LinearTypeRef& a, const LinearTypeRef& b) {
              return compare(*a, *b) < 0;
            });
}

LinearTypeRef LinearType::ground() {
  static LinearTypeRef g = std::make_shared<LinearType>();
  return g;
}

LinearTypeRef LinearType::make_arrow(MultiType l, MultiType r) {
  auto a = std::make_shared<LinearType>();
  a->arrow = true;
  a->lhs = std::move(l);
  a->rhs = std::move(r);
  return a;
}

int compare(const LinearType& a, const LinearType& b) {
  if (a.arrow != b.arrow) return a.arrow ? 1 : -1;
  if (!a.arrow) return 0;
  if (int c = compare(a.lhs, b.lhs)) return c;
  return compare(a.rhs, b.rhs);
}

int compare(const MultiType& a, const MultiType& b) {
  size_t n = std::min(a.elems.size(), b.elems.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = compare(*a.elems[i], *b.elems[i])) return c;
  if (a.elems.size() == b.elems.size()) return 0;
  return a.elems.size() < b.elems.size() ? -1 : 1;
}

bool operator==(const MultiType& a, const MultiType& b) {
  return compare(a, b) == 0;
}
bool operator!=(const MultiType& a, const MultiType& b) { return !(a == b); }

MultiType mt_sum(const MultiType& a, const MultiType& b) {
  std::vector<LinearTypeRef> es;
  es.reserve(a.elems.size() + b.elems.size());
  std::merge(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
             std::back_inserter(es),
             [](const LinearTypeRef& x, const LinearTypeRef& y) {
               return compare(*x, *y) < 0;
             });
  MultiType m;
  m.elems = std::move(es);
  return m;
}

MultiType singleton(LinearTypeRef a) {
  MultiType m;
  m.elems.push_back(std::move(a));
  return m;
}

bool mt_contains(const MultiType& a, const MultiType& b) {
  size_t i = 0;
  for (const auto& e : b.elems) {
    while (i < a.elems.size() && compare(*a.elems[i], *e) < 0) ++i;
    if (i >= a.elems.size() || compare(*a.elems[i], *e) != 0) return false;
    ++i;
  }
  return true;
}

MultiType mt_minus(const MultiType& a, const MultiType& b) {
  MultiType out;
  size_t i = 0;
  for (const auto& e : a.elems) {
    if (i < b.elems.size() && compare(*b.elems[i], *e) == 0) {
      ++i;
      continue;
    }
    out.elems.push_back(e);
  }
  if (i != b.elems.size())
    throw std::invalid_argument("mt_minus: not a sub-multiset");
  return out;
}

int type_size(const LinearType& a) {
  if (!a.arrow) return 1;
  return 1 + type_size(a.lhs) + type_size(a.rhs);
}

int type_size(const MultiType& m) {
  int n = 1;
  for (const auto& e : m.elems) n += type_size(*e);
  return n;
}

bool is_ground(const MultiType& m) {
  for (const auto& e : m.elems)
    if (e->arrow) return false;
  return true;
}

bool is_inert_linear(const LinearType& a) {
  if (!a.arrow) return true;
  return is_ground(a.lhs) && is_inert_multi(a.rhs);
}

bool is_inert_multi(const MultiType& m) {
  for (const auto& e : m.elems)
    if (!is_inert_linear(*e)) return false;
  return true;
}

static bool solvable_linear(const LinearType& a) {
  if (!a.arrow) return true;  // X
  return is_solvable(a.rhs);
}

bool is_solvable(const MultiType& m) {
  if (m.empty()) return false;
  for (const auto& e : m.elems)
    if (!solvable_linear(*e)) return false;
  return true;
}

static bool unitary_linear(const LinearType& a) {
  if (!a.arrow) return true;
  return is_unitary_solvable(a.rhs);
}

bool is_unitary_solvable(const MultiType& m) {
  return m.size() == 1 && unitary_linear(*m.elems[0]);
}

static bool inertly_linear(const LinearType& a) {
  if (!a.arrow) return true;
  return is_inert_multi(a.lhs) && is_inertly_solvable(a.rhs);
}

bool is_inertly_solvable(const MultiType& m) {
  if (m.empty()) return false;
  for (const auto& e : m.elems)
    if (!inertly_linear(*e)) return false;
  return true;
}

bool is_precisely_solvable(const MultiType& m) {
  return is_unitary_solvable(m) && is_inertly_solvable(m);
}

MultiType TypeContext::get(const Name& x) const {
  auto it = entries.find(x);
  return it == entries.end() ? MultiType{} : it->second;
}

void TypeContext::set(const Name& x, MultiType m) {
  if (m.empty())
    entries.erase(x);
  else
    entries[x] = std::move(m);
}

TypeContext TypeContext::without(const Name& x) const {
  TypeContext g = *this;
  g.entries.erase(x);
  return g;
}

std::vector<Name> TypeContext::domain() const {
  std::vector<Name> d;
  for (const auto& [k, _] : entries) d.push_back(k);
  return d;
}

bool operator==(const TypeContext& a, const TypeContext& b) {
  if (a.entries.size() != b.entries.size()) return false;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  for (; ia != a.entries.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}
bool operator!=(const TypeContext& a, const TypeContext& b) {
  return !(a == b);
}

TypeContext ctx_sum(const TypeContext& a, const TypeContext& b) {
  TypeContext g = a;
  for (const auto& [x, m] : b.entries) g.set(x, mt_sum(g.get(x), m));
  return g;
}

bool is_inert_ctx(const TypeContext& g) {
  for (const auto& [_, m] : g.entries)
    if (!is_inert_multi(m)) return false;
  return true;
}

bool is_inert_conclusion(const TypeContext& g, const MultiType& m) {
  return is_inert_ctx(g) && is_inert_multi(m);
}

bool is_tight_conclusion(const TypeContext& g, const MultiType& m) {
  return is_inert_conclusion(g, m) && is_ground(m);
}

namespace {

// Linear types with exactly n constructors, canonical order.
struct TypeEnum {
  std::vector<std::vector<LinearTypeRef>> linear_by_size;  // [n]
  std::vector<std::vector<MultiType>> multi_by_size;       // [n]

  void build(int max) {
    linear_by_size.assign(max + 1, {});
    multi_by_size.assign(max + 1, {});
    for (int n = 1; n <= max; ++n) {
      // multis of size n use linear types of size < n
      multi_by_size[n] = multis_of_size(n);
      if (n == 1) {
        linear_by_size[1].push_back(LinearType::ground());
      } else {
        for (int l = 1; l <= n - 2; ++l) {
          int r = n - 1 - l;
          for (const auto& lm : multi_by_size[l])
            for (const auto& rm : multi_by_size[r])
              linear_by_size[n].push_back(LinearType::make_arrow(lm, rm));
        }
      }
    }
  }

  // Multisets (non-decreasing element sequences) with total size n (the
  // multiset node itself counts 1).
  std::vector<MultiType> multis_of_size(int n) {
    std::vector<MultiType> out;
    std::vector<LinearTypeRef> cur;
    rec(n - 1, nullptr, cur, out);
    return out;
  }

  void rec(int budget, const LinearTypeRef& min_elem,
           std::vector<LinearTypeRef>& cur, std::vector<MultiType>& out) {
    if (budget == 0) {
      MultiType m;
      m.elems = cur;
      out.push_back(std::move(m));
      return;
    }
    for (int s = 1; s <= budget; ++s) {
      for (const auto& a : linear_by_size[s]) {
        if (min_elem && compare(*a, *min_elem) < 0) continue;
        cur.push_back(a);
        rec(budget - s, a, cur, out);
        cur.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<MultiType> enumerate_multi_types(int max_constructors) {
  TypeEnum e;
  e.build(max_constructors);
  std::vector<MultiType> out;
  for (int n = 1; n <= max_constructors; ++n)
    for (auto& m : e.multi_by_size[n]) out.push_back(std::move(m));
  return out;
}

}  // namespace vsc
