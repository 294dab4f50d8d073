#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vsc/term.hpp"

namespace vsc {

class LinearType;
using LinearTypeRef = std::shared_ptr<const LinearType>;

// Multiset of linear types kept in canonical sorted order. Empty is 0.
class MultiType {
public:
  std::vector<LinearTypeRef> elems;

  MultiType() = default;
  explicit MultiType(std::vector<LinearTypeRef> es);

  bool empty() const { return elems.empty(); }
  size_t size() const { return elems.size(); }
};

// Ground X or an arrow M -o N between multi types.
class LinearType {
public:
  bool arrow = false;
  MultiType lhs, rhs;

  static LinearTypeRef ground();
  static LinearTypeRef make_arrow(MultiType l, MultiType r);
};

int compare(const LinearType& a, const LinearType& b);  // Ground < Arrow
int compare(const MultiType& a, const MultiType& b);    // sorted-seq lexicographic
bool operator==(const MultiType& a, const MultiType& b);
bool operator!=(const MultiType& a, const MultiType& b);

MultiType mt_sum(const MultiType& a, const MultiType& b);
MultiType singleton(LinearTypeRef a);
// a \ b as multisets; throws if b is not contained in a.
MultiType mt_minus(const MultiType& a, const MultiType& b);
bool mt_contains(const MultiType& a, const MultiType& b);

int type_size(const LinearType& a);  // constructor count
int type_size(const MultiType& m);   // 1 + sum over elements

bool is_ground(const MultiType& m);            // n[X]
bool is_inert_linear(const LinearType& a);     // X | n[X] -o M^i
bool is_inert_multi(const MultiType& m);
bool is_solvable(const MultiType& m);          // nonempty, rhs-solvable elems
bool is_unitary_solvable(const MultiType& m);  // singleton variant
bool is_inertly_solvable(const MultiType& m);  // inert lhs variant
bool is_precisely_solvable(const MultiType& m);

// Finite map from names to multi types; 0-valued entries are not stored.
class TypeContext {
public:
  std::map<Name, MultiType> entries;

  MultiType get(const Name& x) const;
  bool has(const Name& x) const { return entries.count(x) != 0; }
  void set(const Name& x, MultiType m);  // erases on 0
  TypeContext without(const Name& x) const;
  std::vector<Name> domain() const;
};

bool operator==(const TypeContext& a, const TypeContext& b);
bool operator!=(const TypeContext& a, const TypeContext& b);
TypeContext ctx_sum(const TypeContext& a, const TypeContext& b);
bool is_inert_ctx(const TypeContext& g);

bool is_inert_conclusion(const TypeContext& g, const MultiType& m);
bool is_tight_conclusion(const TypeContext& g, const MultiType& m);

// All multi types with <= max_constructors constructors, canonical, no
// duplicates, size-major order.
std::vector<MultiType> enumerate_multi_types(int max_constructors);

}  // namespace vsc
