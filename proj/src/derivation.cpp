#include "vsc/derivation.hpp"

#include <algorithm>

namespace vsc {

namespace {

DerivPtr mk(Derivation d) { return std::make_shared<Derivation>(std::move(d)); }

void require(bool cond, const std::string& msg) {
  if (!cond) throw DerivationError(msg);
}

std::set<Name> avoid_set(const Judgment& j) {
  auto s = free_vars(j.term);
  for (const auto& [k, _] : j.ctx.entries) s.insert(k);
  return s;
}

}  // namespace

DerivPtr dax(const Name& x, LinearTypeRef a) {
  Derivation d;
  d.rule = Rule::Ax;
  d.conclusion.term = Term::fvar(x);
  d.conclusion.linear = true;
  d.conclusion.ltype = a;
  d.conclusion.ctx.set(x, singleton(std::move(a)));
  return mk(std::move(d));
}

DerivPtr dmany(const TermPtr& value_subject, std::vector<DerivPtr> premises) {
  require(is_value(value_subject), "many: subject is not a value");
  for (const auto& p : premises) {
    require(p->conclusion.linear, "many: premise is not a linear judgment");
    require(alpha_eq(p->conclusion.term, value_subject),
            "many: premises type different subjects");
  }
  std::stable_sort(premises.begin(), premises.end(),
                   [](const DerivPtr& a, const DerivPtr& b) {
                     return compare(*a->conclusion.ltype,
                                    *b->conclusion.ltype) < 0;
                   });
  Derivation d;
  d.rule = Rule::Many;
  d.conclusion.term = value_subject;
  d.conclusion.linear = false;
  std::vector<LinearTypeRef> ts;
  for (const auto& p : premises) {
    ts.push_back(p->conclusion.ltype);
    d.conclusion.ctx = ctx_sum(d.conclusion.ctx, p->conclusion.ctx);
  }
  d.conclusion.mtype = MultiType(std::move(ts));
  d.children = std::move(premises);
  return mk(std::move(d));
}

DerivPtr dlam(const Name& x, const Name& hint, DerivPtr body) {
  require(!body->conclusion.linear, "lam: body premise must be a multi judgment");
  MultiType m = body->conclusion.ctx.get(x);
  Derivation d;
  d.rule = Rule::Lam;
  d.conclusion.ctx = body->conclusion.ctx.without(x);
  d.conclusion.term =
      Term::abs(hint, close_binder(body->conclusion.term, x));
  d.conclusion.linear = true;
  d.conclusion.ltype =
      LinearType::make_arrow(std::move(m), body->conclusion.mtype);
  d.binder_name = x;
  d.children.push_back(std::move(body));
  return mk(std::move(d));
}

DerivPtr dapp(DerivPtr fun, DerivPtr arg) {
  require(!fun->conclusion.linear && !arg->conclusion.linear,
          "app: premises must be multi judgments");
  const MultiType& ft = fun->conclusion.mtype;
  require(ft.size() == 1 && ft.elems[0]->arrow,
          "app: left premise is not a singleton arrow");
  require(ft.elems[0]->lhs == arg->conclusion.mtype,
          "app: argument type does not match the arrow");
  Derivation d;
  d.rule = Rule::App;
  d.conclusion.ctx = ctx_sum(fun->conclusion.ctx, arg->conclusion.ctx);
  d.conclusion.term = Term::app(fun->conclusion.term, arg->conclusion.term);
  d.conclusion.linear = false;
  d.conclusion.mtype = ft.elems[0]->rhs;
  d.children.push_back(std::move(fun));
  d.children.push_back(std::move(arg));
  return mk(std::move(d));
}

DerivPtr des(const Name& x, const Name& hint, DerivPtr body, DerivPtr arg) {
  require(!body->conclusion.linear && !arg->conclusion.linear,
          "es: premises must be multi judgments");
  require(body->conclusion.ctx.get(x) == arg->conclusion.mtype,
          "es: argument type does not match the binding");
  Derivation d;
  d.rule = Rule::Es;
  d.conclusion.ctx =
      ctx_sum(body->conclusion.ctx.without(x), arg->conclusion.ctx);
  d.conclusion.term = Term::sub(close_binder(body->conclusion.term, x), hint,
                                arg->conclusion.term);
  d.conclusion.linear = false;
  d.conclusion.mtype = body->conclusion.mtype;
  d.binder_name = x;
  d.children.push_back(std::move(body));
  d.children.push_back(std::move(arg));
  return mk(std::move(d));
}

int size_general(const DerivPtr& d) {
  int n = d->rule == Rule::Many ? 0 : 1;
  for (const auto& c : d->children) n += size_general(c);
  return n;
}

int size_mult(const DerivPtr& d) {
  int n = (d->rule == Rule::App || d->rule == Rule::Lam) ? 1 : 0;
  for (const auto& c : d->children) n += size_mult(c);
  return n;
}

DerivPtr rename_free(const DerivPtr& d, const Name& from, const Name& to) {
  if (from == to) return d;
  Derivation nd;
  nd.rule = d->rule;
  nd.binder_name = d->binder_name == from ? to : d->binder_name;
  nd.conclusion = d->conclusion;
  if (nd.conclusion.ctx.has(from)) {
    MultiType m = nd.conclusion.ctx.get(from);
    nd.conclusion.ctx.entries.erase(from);
    nd.conclusion.ctx.set(to, mt_sum(nd.conclusion.ctx.get(to), m));
  }
  nd.conclusion.term = meta_subst(nd.conclusion.term, from, Term::fvar(to));
  for (const auto& c : d->children)
    nd.children.push_back(rename_free(c, from, to));
  return mk(std::move(nd));
}

// ---------------------------------------------------------------------------
// check

namespace {

struct Checker {
  std::vector<RuleViolation> out;
  Path path;

  void fail(const std::string& m) { out.push_back({path, m}); }

  void walk(const DerivPtr& d) {
    const Judgment& j = d->conclusion;
    if (j.linear && !j.ltype) {
      fail("linear judgment without a linear type");
      return;
    }
    // dom(ctx) included in fv(term) (Remark E.1)
    auto fv = free_vars(j.term);
    for (const auto& [k, _] : j.ctx.entries)
      if (!fv.count(k)) fail("context mentions " + k + " not free in subject");
    if (j.linear && !is_value(j.term))
      fail("linear judgment over a non-value");
    switch (d->rule) {
      case Rule::Ax: check_ax(d); break;
      case Rule::Many: check_many(d); break;
      case Rule::Lam: check_lam(d); break;
      case Rule::App: check_app(d); break;
      case Rule::Es: check_es(d); break;
    }
    for (size_t i = 0; i < d->children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      walk(d->children[i]);
      path.pop_back();
    }
  }

  void check_ax(const DerivPtr& d) {
    const Judgment& j = d->conclusion;
    if (!d->children.empty()) fail("ax with premises");
    if (!j.linear) return fail("ax must conclude a linear judgment");
    if (j.term->kind != TermKind::FVar) return fail("ax over a non-variable");
    TypeContext want;
    want.set(j.term->name, singleton(j.ltype));
    if (j.ctx != want) fail("ax context is not x:[A]");
  }

  void check_many(const DerivPtr& d) {
    const Judgment& j = d->conclusion;
    if (j.linear) return fail("many must conclude a multi judgment");
    if (!is_value(j.term)) return fail("many over non-value");
    TypeContext csum;
    std::vector<LinearTypeRef> ts;
    for (const auto& c : d->children) {
      if (!c->conclusion.linear) {
        fail("many premise is not linear");
        return;
      }
      if (!alpha_eq(c->conclusion.term, j.term))
        fail("many premise types a different subject");
      csum = ctx_sum(csum, c->conclusion.ctx);
      ts.push_back(c->conclusion.ltype);
    }
    if (MultiType(std::move(ts)) != j.mtype)
      fail("many type is not the multiset of premise types");
    if (csum != j.ctx) fail("many context is not the premise sum");
  }

  // Find the name the binder was opened with; empty optional on failure.
  std::optional<Name> binding_name(const DerivPtr& d, const Judgment& child,
                                   const TypeContext& outer_ctx,
                                   const TermPtr& debruijn_body) {
    std::vector<Name> candidates;
    if (!d->binder_name.empty()) candidates.push_back(d->binder_name);
    for (const auto& [k, _] : child.ctx.entries)
      if (!outer_ctx.has(k)) candidates.push_back(k);
    auto cfv = free_vars(child.term);
    auto ofv = free_vars(d->conclusion.term);
    for (const auto& n : cfv)
      if (!ofv.count(n)) candidates.push_back(n);
    {  // vacuous binder: any unused name
      std::set<Name> avoid = cfv;
      for (const auto& [k, _] : child.ctx.entries) avoid.insert(k);
      candidates.push_back(fresh_name(d->conclusion.term->name.empty()
                                          ? Name("x")
                                          : d->conclusion.term->name,
                                      avoid));
    }
    for (const auto& n : candidates)
      if (alpha_eq(close_binder(child.term, n), debruijn_body)) return n;
    return std::nullopt;
  }

  void check_lam(const DerivPtr& d) {
    const Judgment& j = d->conclusion;
    if (!j.linear) return fail("lam must conclude a linear judgment");
    if (j.term->kind != TermKind::Abs) return fail("lam over a non-abstraction");
    if (d->children.size() != 1) return fail("lam needs exactly one premise");
    const Judgment& c = d->children[0]->conclusion;
    if (c.linear) return fail("lam premise must be a multi judgment");
    auto n = binding_name(d, c, j.ctx, j.term->left);
    if (!n) return fail("lam premise does not match the abstraction body");
    if (c.ctx.without(*n) != j.ctx)
      fail("lam context is not the premise context minus the binder");
    if (!j.ltype->arrow || j.ltype->lhs != c.ctx.get(*n) ||
        j.ltype->rhs != c.mtype)
      fail("lam type is not M -o N for the premise");
  }

  void check_app(const DerivPtr& d) {
    const Judgment& j = d->conclusion;
    if (j.linear) return fail("app must conclude a multi judgment");
    if (j.term->kind != TermKind::App) return fail("app over a non-application");
    if (d->children.size() != 2) return fail("app needs exactly two premises");
    const Judgment& f = d->children[0]->conclusion;
    const Judgment& a = d->children[1]->conclusion;
    if (f.linear || a.linear) return fail("app premises must be multi judgments");
    if (!alpha_eq(f.term, j.term->left) || !alpha_eq(a.term, j.term->right))
      fail("app premises do not match the subterms");
    if (f.mtype.size() != 1 || !f.mtype.elems[0]->arrow)
      return fail("left premise not singleton arrow");
    if (f.mtype.elems[0]->lhs != a.mtype)
      fail("argument type does not match the arrow");
    if (f.mtype.elems[0]->rhs != j.mtype) fail("app type is not the arrow rhs");
    if (ctx_sum(f.ctx, a.ctx) != j.ctx) fail("app context is not the sum");
  }

  void check_es(const DerivPtr& d) {
    const Judgment& j = d->conclusion;
    if (j.linear) return fail("es must conclude a multi judgment");
    if (j.term->kind != TermKind::Sub)
      return fail("es over a non-substitution");
    if (d->children.size() != 2) return fail("es needs exactly two premises");
    const Judgment& b = d->children[0]->conclusion;
    const Judgment& a = d->children[1]->conclusion;
    if (b.linear || a.linear) return fail("es premises must be multi judgments");
    if (!alpha_eq(a.term, j.term->right))
      fail("es argument premise does not match");
    auto n = binding_name(d, b, j.ctx, j.term->left);
    if (!n) return fail("es premise does not match the body");
    if (b.ctx.get(*n) != a.mtype)
      fail("binding type does not match the argument premise");
    if (ctx_sum(b.ctx.without(*n), a.ctx) != j.ctx)
      fail("es context is not the sum");
    if (b.mtype != j.mtype) fail("es type is not the body type");
  }
};

}  // namespace

std::vector<RuleViolation> check(const DerivPtr& d) {
  Checker c;
  c.walk(d);
  return c.out;
}

// ---------------------------------------------------------------------------
// value splitting / merging (Lemmas E.1 and E.3)

std::pair<DerivPtr, DerivPtr> split_value(const DerivPtr& d,
                                          const MultiType& m1,
                                          const MultiType& m2) {
  require(d->rule == Rule::Many, "split_value: not a value derivation");
  require(mt_sum(m1, m2) == d->conclusion.mtype,
          "split_value: m1 (+) m2 differs from the derived type");
  std::vector<DerivPtr> kids = d->children;
  std::stable_sort(kids.begin(), kids.end(),
                   [](const DerivPtr& a, const DerivPtr& b) {
                     return compare(*a->conclusion.ltype,
                                    *b->conclusion.ltype) < 0;
                   });
  std::vector<LinearTypeRef> need = m1.elems;  // sorted
  std::vector<DerivPtr> part1, part2;
  for (const auto& k : kids) {
    auto it = std::find_if(need.begin(), need.end(),
                           [&](const LinearTypeRef& a) {
                             return compare(*a, *k->conclusion.ltype) == 0;
                           });
    if (it != need.end()) {
      need.erase(it);
      part1.push_back(k);
    } else {
      part2.push_back(k);
    }
  }
  require(need.empty(), "split_value: premises cannot realize m1");
  return {dmany(d->conclusion.term, std::move(part1)),
          dmany(d->conclusion.term, std::move(part2))};
}

DerivPtr merge_value(const DerivPtr& d1, const DerivPtr& d2) {
  require(d1->rule == Rule::Many && d2->rule == Rule::Many,
          "merge_value: not value derivations");
  require(alpha_eq(d1->conclusion.term, d2->conclusion.term),
          "merge_value: different subjects");
  std::vector<DerivPtr> kids = d1->children;
  kids.insert(kids.end(), d2->children.begin(), d2->children.end());
  return dmany(d1->conclusion.term, std::move(kids));
}

DerivPtr empty_value(const TermPtr& v) { return dmany(v, {}); }

// ---------------------------------------------------------------------------
// substitution (Lemma IV.2, Appendix E.2)

namespace {

// Ensure the opened binder of a Lam/Es node avoids the given names by
// renaming the sub-derivation if necessary. Returns the (possibly new) node
// and its binder name.
std::pair<DerivPtr, Name> freshen_binder(const DerivPtr& node,
                                         const std::set<Name>& avoid) {
  Name y = node->binder_name;
  if (y.empty() || !avoid.count(y)) return {node, y};
  std::set<Name> all = avoid;
  auto fv = avoid_set(node->children[0]->conclusion);
  all.insert(fv.begin(), fv.end());
  Name y2 = fresh_name(y, all);
  Derivation nd = *node;
  nd.binder_name = y2;
  nd.children[0] = rename_free(node->children[0], y, y2);
  return {mk(std::move(nd)), y2};
}

DerivPtr subst_rec(const DerivPtr& phi, const Name& x, const DerivPtr& psi) {
  const Judgment& j = phi->conclusion;
  switch (phi->rule) {
    case Rule::Many: {
      if (j.term->kind == TermKind::FVar) {
        if (j.term->name == x) {
          require(psi->conclusion.mtype == j.mtype,
                  "substitute: type of v differs from the use of x");
          return psi;
        }
        require(psi->conclusion.mtype.empty(),
                "substitute: x unused but N nonempty");
        return phi;
      }
      // abstraction subject: split psi along the premises' demands on x
      TermPtr new_subject =
          meta_subst(j.term, x, psi->conclusion.term);
      std::vector<DerivPtr> kids;
      DerivPtr rest = psi;
      for (const auto& c : phi->children) {
        MultiType ni = c->conclusion.ctx.get(x);
        auto [pi, r] = split_value(
            rest, ni, mt_minus(rest->conclusion.mtype, ni));
        rest = r;
        // c is a Lam node; substitute inside its body
        auto avoid = free_vars(psi->conclusion.term);
        avoid.insert(x);
        auto [lam, y] = freshen_binder(c, avoid);
        kids.push_back(
            dlam(y, lam->conclusion.term->name,
                 subst_rec(lam->children[0], x, pi)));
      }
      require(rest->conclusion.mtype.empty(),
              "substitute: leftover premises after distribution");
      return dmany(new_subject, std::move(kids));
    }
    case Rule::App: {
      MultiType n1 = phi->children[0]->conclusion.ctx.get(x);
      MultiType n2 = phi->children[1]->conclusion.ctx.get(x);
      auto [p1, p2] = split_value(psi, n1, n2);
      return dapp(subst_rec(phi->children[0], x, p1),
                  subst_rec(phi->children[1], x, p2));
    }
    case Rule::Es: {
      auto avoid = free_vars(psi->conclusion.term);
      avoid.insert(x);
      auto [node, y] = freshen_binder(phi, avoid);
      MultiType n1 = node->children[0]->conclusion.ctx.get(x);
      MultiType n2 = node->children[1]->conclusion.ctx.get(x);
      auto [p1, p2] = split_value(psi, n1, n2);
      return des(y, node->conclusion.term->name,
                 subst_rec(node->children[0], x, p1),
                 subst_rec(node->children[1], x, p2));
    }
    default:
      throw DerivationError("substitute: unexpected linear node");
  }
}

}  // namespace

DerivPtr substitute_derivation(const DerivPtr& phi, const Name& x,
                               const DerivPtr& psi) {
  require(!phi->conclusion.linear && !psi->conclusion.linear,
          "substitute: judgments must be multi");
  require(is_value(psi->conclusion.term), "substitute: psi must type a value");
  require(psi->conclusion.mtype == phi->conclusion.ctx.get(x),
          "substitute: psi type differs from the binding of x");
  return subst_rec(phi, x, psi);
}

// ---------------------------------------------------------------------------
// removal (Lemma IV.3, Appendix E.4)

namespace {

std::pair<DerivPtr, DerivPtr> remove_rec(const DerivPtr& phi, const TermPtr& t,
                                         const Name& x, const TermPtr& v) {
  switch (t->kind) {
    case TermKind::FVar: {
      if (t->name == x) {
        std::vector<DerivPtr> axs;
        for (const auto& a : phi->conclusion.mtype.elems) axs.push_back(dax(x, a));
        return {dmany(Term::fvar(x), std::move(axs)), phi};
      }
      return {phi, empty_value(v)};
    }
    case TermKind::Abs: {
      require(phi->rule == Rule::Many, "remove: expected a value derivation");
      std::vector<DerivPtr> kids;
      std::vector<DerivPtr> thetas;
      for (const auto& c : phi->children) {
        auto avoid = free_vars(v);
        avoid.insert(x);
        auto [lam, y0] = freshen_binder(c, avoid);
        Name y = y0;
        if (y.empty()) {  // vacuous binder: open with an internal fresh name
          y = reserved_fresh(t->name.empty() ? Name("x") : t->name);
        }
        auto [psi_i, theta_i] =
            remove_rec(lam->children[0], open_binder(t->left, y), x, v);
        kids.push_back(dlam(y, t->name, psi_i));
        thetas.push_back(theta_i);
      }
      DerivPtr theta = empty_value(v);
      for (const auto& th : thetas) theta = merge_value(theta, th);
      return {dmany(t, std::move(kids)), theta};
    }
    case TermKind::App: {
      require(phi->rule == Rule::App, "remove: shape mismatch at application");
      auto [p1, t1] = remove_rec(phi->children[0], t->left, x, v);
      auto [p2, t2] = remove_rec(phi->children[1], t->right, x, v);
      return {dapp(p1, p2), merge_value(t1, t2)};
    }
    case TermKind::Sub: {
      require(phi->rule == Rule::Es, "remove: shape mismatch at substitution");
      auto avoid = free_vars(v);
      avoid.insert(x);
      auto [node, y0] = freshen_binder(phi, avoid);
      Name y = y0;
      if (y.empty()) y = reserved_fresh(t->name.empty() ? Name("x") : t->name);
      auto [p1, t1] =
          remove_rec(node->children[0], open_binder(t->left, y), x, v);
      auto [p2, t2] = remove_rec(node->children[1], t->right, x, v);
      return {des(y, t->name, p1, p2), merge_value(t1, t2)};
    }
    default:
      throw DerivationError("remove: loose bound variable in t");
  }
}

}  // namespace

std::pair<DerivPtr, DerivPtr> remove_derivation(const DerivPtr& phi,
                                                const TermPtr& t,
                                                const Name& x,
                                                const TermPtr& v) {
  require(!phi->conclusion.linear, "remove: judgment must be multi");
  require(is_value(v), "remove: v must be a value");
  require(alpha_eq(phi->conclusion.term, meta_subst(t, x, v)),
          "remove: subject mismatch");
  return remove_rec(phi, t, x, v);
}

}  // namespace vsc
