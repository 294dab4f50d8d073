#include "vsc/syntax.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>

namespace vsc {

namespace {

enum class Tok {
  Ident, Lambda, Dot, LParen, RParen, LBrack, RBrack,
  Comma, LArrow, Lolli, Zero, End
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

struct Lexer {
  std::string_view in;
  size_t pos = 0;
  std::vector<Token> toks;

  [[noreturn]] void err(size_t s, const std::string& m) {
    throw ParseError({s, std::min(s + 1, in.size())}, m);
  }

  bool starts_with(const char* s) {
    return in.substr(pos).substr(0, strlen(s)) == s;
  }

  void run() {
    while (pos < in.size()) {
      char c = in[pos];
      if (isspace(static_cast<unsigned char>(c))) {
        ++pos;
        continue;
      }
      size_t s = pos;
      if (isalpha(static_cast<unsigned char>(c))) {
        ++pos;
        while (pos < in.size() &&
               (isalnum(static_cast<unsigned char>(in[pos])) ||
                in[pos] == '_' || in[pos] == '\''))
          ++pos;
        toks.push_back({Tok::Ident, std::string(in.substr(s, pos - s)), {s, pos}});
      } else if (c == '\\') {
        toks.push_back({Tok::Lambda, "\\", {s, ++pos}});
      } else if (starts_with("\xce\xbb")) {  // lambda
        pos += 2;
        toks.push_back({Tok::Lambda, "\\", {s, pos}});
      } else if (c == '.') {
        toks.push_back({Tok::Dot, ".", {s, ++pos}});
      } else if (c == '(') {
        toks.push_back({Tok::LParen, "(", {s, ++pos}});
      } else if (c == ')') {
        toks.push_back({Tok::RParen, ")", {s, ++pos}});
      } else if (c == '[') {
        toks.push_back({Tok::LBrack, "[", {s, ++pos}});
      } else if (c == ']') {
        toks.push_back({Tok::RBrack, "]", {s, ++pos}});
      } else if (c == ',') {
        toks.push_back({Tok::Comma, ",", {s, ++pos}});
      } else if (starts_with("<-")) {
        pos += 2;
        toks.push_back({Tok::LArrow, "<-", {s, pos}});
      } else if (starts_with("\xe2\x86\x90")) {  // left arrow
        pos += 3;
        toks.push_back({Tok::LArrow, "<-", {s, pos}});
      } else if (starts_with("-o")) {
        pos += 2;
        toks.push_back({Tok::Lolli, "-o", {s, pos}});
      } else if (starts_with("\xe2\x8a\xb8")) {  // lollipop
        pos += 3;
        toks.push_back({Tok::Lolli, "-o", {s, pos}});
      } else if (c == '0') {
        toks.push_back({Tok::Zero, "0", {s, ++pos}});
      } else {
        err(s, "unexpected character");
      }
    }
    toks.push_back({Tok::End, "", {in.size(), in.size()}});
  }
};

// Named surface tree; converted to the nameless representation in a second
// pass once all binders are known (ES binders come after their body).
struct SNode {
  enum K { Var, Abs, App, Sub } k;
  Name name;
  std::unique_ptr<SNode> a, b;
  SourceSpan span;
};
using SPtr = std::unique_ptr<SNode>;

struct Parser {
  std::vector<Token> toks;
  size_t i = 0;

  const Token& peek() const { return toks[i]; }
  Token next() { return toks[i++]; }

  [[noreturn]] void err(const Token& t, const std::string& m) {
    throw ParseError(t.span, m + " (got '" + (t.kind == Tok::End ? "<end>" : t.text) + "')");
  }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) err(peek(), std::string("expected ") + what);
    return next();
  }

  SPtr term() {
    std::vector<SPtr> elems;
    for (;;) {
      if (peek().kind == Tok::Lambda) {
        elems.push_back(lambda());
        break;  // body extends maximally right
      }
      if (peek().kind == Tok::Ident || peek().kind == Tok::LParen) {
        elems.push_back(atom());
        continue;
      }
      break;
    }
    if (elems.empty()) err(peek(), "expected term");
    SPtr acc = std::move(elems[0]);
    for (size_t j = 1; j < elems.size(); ++j) {
      auto n = std::make_unique<SNode>();
      n->k = SNode::App;
      n->span = {acc->span.start, elems[j]->span.end};
      n->a = std::move(acc);
      n->b = std::move(elems[j]);
      acc = std::move(n);
    }
    return acc;
  }

  SPtr lambda() {
    Token l = expect(Tok::Lambda, "lambda");
    Token x = expect(Tok::Ident, "binder");
    expect(Tok::Dot, "'.'");
    auto body = term();
    auto n = std::make_unique<SNode>();
    n->k = SNode::Abs;
    n->name = x.text;
    n->span = {l.span.start, body->span.end};
    n->a = std::move(body);
    return n;
  }

  SPtr atom() {
    SPtr base;
    if (peek().kind == Tok::Ident) {
      Token t = next();
      base = std::make_unique<SNode>();
      base->k = SNode::Var;
      base->name = t.text;
      base->span = t.span;
    } else {
      Token l = expect(Tok::LParen, "'('");
      base = term();
      Token r = expect(Tok::RParen, "')'");
      base->span = {l.span.start, r.span.end};
    }
    while (peek().kind == Tok::LBrack) {
      Token l = next();
      Token x = expect(Tok::Ident, "binder");
      expect(Tok::LArrow, "'<-'");
      auto arg = term();
      Token r = expect(Tok::RBrack, "']'");
      auto n = std::make_unique<SNode>();
      n->k = SNode::Sub;
      n->name = x.text;
      n->span = {base->span.start, r.span.end};
      n->a = std::move(base);
      n->b = std::move(arg);
      base = std::move(n);
    }
    return base;
  }
};

TermPtr to_nameless(const SNode& n, std::vector<Name>& scope) {
  switch (n.k) {
    case SNode::Var: {
      for (size_t j = scope.size(); j-- > 0;)
        if (scope[j] == n.name)
          return Term::bvar(static_cast<int>(scope.size() - 1 - j));
      if (is_reserved_name(n.name))
        throw ParseError(n.span, "reserved identifier '" + n.name +
                                     "' cannot occur free");
      return Term::fvar(n.name);
    }
    case SNode::Abs: {
      scope.push_back(n.name);
      auto b = to_nameless(*n.a, scope);
      scope.pop_back();
      return Term::abs(n.name, b);
    }
    case SNode::App: {
      auto f = to_nameless(*n.a, scope);
      auto a = to_nameless(*n.b, scope);
      return Term::app(f, a);
    }
    case SNode::Sub: {
      auto arg = to_nameless(*n.b, scope);
      scope.push_back(n.name);
      auto body = to_nameless(*n.a, scope);
      scope.pop_back();
      return Term::sub(body, n.name, arg);
    }
  }
  throw ParseError(n.span, "malformed term");
}

}  // namespace

TermPtr parse_term(std::string_view input) {
  Lexer lx{input};
  lx.run();
  Parser p{std::move(lx.toks)};
  auto s = p.term();
  if (p.peek().kind != Tok::End) p.err(p.peek(), "expected end of input");
  std::vector<Name> scope;
  return to_nameless(*s, scope);
}

// ---------------------------------------------------------------------------
// printing

namespace {

// Display names referenced by loose indices of t (relative to depth).
void loose_refs(const TermPtr& t, int depth, const std::vector<Name>& env,
                std::set<Name>& out) {
  switch (t->kind) {
    case TermKind::BVar: {
      int up = t->index - depth;
      if (up >= 0 && up < static_cast<int>(env.size()))
        out.insert(env[env.size() - 1 - up]);
      return;
    }
    case TermKind::FVar: out.insert(t->name); return;
    case TermKind::Abs: loose_refs(t->left, depth + 1, env, out); return;
    case TermKind::App:
      loose_refs(t->left, depth, env, out);
      loose_refs(t->right, depth, env, out);
      return;
    case TermKind::Sub:
      loose_refs(t->left, depth + 1, env, out);
      loose_refs(t->right, depth, env, out);
      return;
  }
}

Name display_binder(const TermPtr& body, const std::vector<Name>& env,
                    const Name& hint) {
  std::set<Name> avoid;
  loose_refs(body, 1, env, avoid);
  Name base = hint.empty() ? Name("x") : hint;
  if (!avoid.count(base)) return base;
  for (int k = 1;; ++k) {
    Name cand = base + "'" + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

// level 0: any term; 1: application left; 2: application right / atom.
std::string render(const TermPtr& t, std::vector<Name>& env, int level) {
  switch (t->kind) {
    case TermKind::BVar: {
      if (t->index < static_cast<int>(env.size()))
        return env[env.size() - 1 - t->index];
      return "#" + std::to_string(t->index);  // loose index, debug only
    }
    case TermKind::FVar: return t->name;
    case TermKind::Abs: {
      Name x = display_binder(t->left, env, t->name);
      env.push_back(x);
      std::string s = "\\" + x + ". " + render(t->left, env, 0);
      env.pop_back();
      return level > 0 ? "(" + s + ")" : s;
    }
    case TermKind::App: {
      std::string s =
          render(t->left, env, 1) + " " + render(t->right, env, 2);
      return level > 1 ? "(" + s + ")" : s;
    }
    case TermKind::Sub: {
      // the printed body must itself be a postfixable atom
      std::string body;
      if (t->left->kind == TermKind::Sub || t->left->kind == TermKind::BVar ||
          t->left->kind == TermKind::FVar) {
        Name x = display_binder(t->left, env, t->name);
        env.push_back(x);
        body = render(t->left, env, 0);
        env.pop_back();
        std::string arg = render(t->right, env, 0);
        return body + "[" + x + " <- " + arg + "]";
      }
      Name x = display_binder(t->left, env, t->name);
      env.push_back(x);
      body = "(" + render(t->left, env, 0) + ")";
      env.pop_back();
      std::string arg = render(t->right, env, 0);
      return body + "[" + x + " <- " + arg + "]";
    }
  }
  return "?";
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::vector<Name> env;
  return render(t, env, 0);
}

// ---------------------------------------------------------------------------
// types

namespace {

struct TypeParser {
  std::vector<Token> toks;
  size_t i = 0;
  const Token& peek() const { return toks[i]; }
  Token next() { return toks[i++]; }

  [[noreturn]] void err(const Token& t, const std::string& m) {
    throw ParseError(t.span, m);
  }

  MultiType multi() {
    if (peek().kind == Tok::Zero) {
      next();
      return {};
    }
    if (peek().kind != Tok::LBrack) err(peek(), "expected '0' or '['");
    next();
    std::vector<LinearTypeRef> es;
    if (peek().kind == Tok::RBrack) {
      next();
      return {};
    }
    es.push_back(linear());
    while (peek().kind == Tok::Comma) {
      next();
      es.push_back(linear());
    }
    if (peek().kind != Tok::RBrack) err(peek(), "expected ']' or ','");
    next();
    return MultiType(std::move(es));
  }

  LinearTypeRef linear() {
    if (peek().kind == Tok::Ident) {
      Token t = next();
      if (t.text != "X") err(t, "unknown ground type '" + t.text + "'");
      return LinearType::ground();
    }
    MultiType l = multi();
    if (peek().kind != Tok::Lolli) err(peek(), "expected '-o'");
    next();
    MultiType r = multi();
    return LinearType::make_arrow(std::move(l), std::move(r));
  }
};

}  // namespace

MultiType parse_type(std::string_view input) {
  Lexer lx{input};
  lx.run();
  TypeParser p{std::move(lx.toks)};
  auto m = p.multi();
  if (p.peek().kind != Tok::End) p.err(p.peek(), "expected end of input");
  return m;
}

std::string print_type(const LinearType& a) {
  if (!a.arrow) return "X";
  return print_type(a.lhs) + " -o " + print_type(a.rhs);
}

std::string print_type(const MultiType& m) {
  if (m.empty()) return "0";
  std::string s = "[";
  for (size_t i = 0; i < m.elems.size(); ++i) {
    if (i) s += ", ";
    s += print_type(*m.elems[i]);
  }
  return s + "]";
}

std::string print_context(const TypeContext& g) {
  std::string s;
  for (const auto& [x, m] : g.entries) {
    if (!s.empty()) s += ", ";
    s += x + ":" + print_type(m);
  }
  return s;
}

std::string print_judgment(const Judgment& j) {
  std::string s = print_context(j.ctx);
  if (!s.empty()) s += " ";
  s += "|- " + print_term(j.term) + " : ";
  s += j.linear ? print_type(*j.ltype) : print_type(j.mtype);
  return s;
}

// ---------------------------------------------------------------------------
// derivation serialization

namespace {

using nlohmann::json;

const char* rule_tag(Rule r) {
  switch (r) {
    case Rule::Ax: return "ax";
    case Rule::App: return "app";
    case Rule::Lam: return "lam";
    case Rule::Es: return "es";
    case Rule::Many: return "many";
  }
  return "?";
}

json to_json(const DerivPtr& d) {
  json node;
  node["rule"] = rule_tag(d->rule);
  json ctx = json::array();
  for (const auto& [x, m] : d->conclusion.ctx.entries)
    ctx.push_back(json::array({x, print_type(m)}));
  node["ctx"] = std::move(ctx);
  node["term"] = print_term(d->conclusion.term);
  node["type"] = d->conclusion.linear ? print_type(*d->conclusion.ltype)
                                      : print_type(d->conclusion.mtype);
  node["linear"] = d->conclusion.linear;
  json kids = json::array();
  for (const auto& c : d->children) kids.push_back(to_json(c));
  node["children"] = std::move(kids);
  return node;
}

LinearTypeRef parse_linear_type(const std::string& s) {
  Lexer lx{s};
  lx.run();
  TypeParser p{std::move(lx.toks)};
  auto a = p.linear();
  if (p.peek().kind != Tok::End) p.err(p.peek(), "expected end of type");
  return a;
}

DerivPtr from_json(const json& node) {
  if (!node.is_object()) throw ParseError({0, 0}, "derivation node must be an object");
  for (const char* f : {"rule", "ctx", "term", "type", "linear", "children"})
    if (!node.contains(f))
      throw ParseError({0, 0}, std::string("derivation node missing field '") + f + "'");
  Derivation d;
  std::string tag = node["rule"].get<std::string>();
  if (tag == "ax")
    d.rule = Rule::Ax;
  else if (tag == "app")
    d.rule = Rule::App;
  else if (tag == "lam")
    d.rule = Rule::Lam;
  else if (tag == "es")
    d.rule = Rule::Es;
  else if (tag == "many")
    d.rule = Rule::Many;
  else
    throw ParseError({0, 0}, "unknown rule tag '" + tag + "'");
  for (const auto& e : node["ctx"]) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError({0, 0}, "context entry must be [name, type]");
    d.conclusion.ctx.set(e[0].get<std::string>(),
                         parse_type(e[1].get<std::string>()));
  }
  d.conclusion.term = parse_term(node["term"].get<std::string>());
  d.conclusion.linear = node["linear"].get<bool>();
  if (d.conclusion.linear)
    d.conclusion.ltype = parse_linear_type(node["type"].get<std::string>());
  else
    d.conclusion.mtype = parse_type(node["type"].get<std::string>());
  for (const auto& c : node["children"]) d.children.push_back(from_json(c));
  // Reconstruct the opened binder name for lam/es nodes.
  if ((d.rule == Rule::Lam || d.rule == Rule::Es) && d.children.size() >= 1 &&
      d.conclusion.term &&
      (d.conclusion.term->kind == TermKind::Abs ||
       d.conclusion.term->kind == TermKind::Sub)) {
    const Judgment& c = d.children[0]->conclusion;
    std::vector<Name> cands;
    for (const auto& [k, _] : c.ctx.entries)
      if (!d.conclusion.ctx.has(k)) cands.push_back(k);
    auto cfv = free_vars(c.term);
    auto ofv = free_vars(d.conclusion.term);
    for (const auto& n : cfv)
      if (!ofv.count(n)) cands.push_back(n);
    {
      std::set<Name> avoid = cfv;
      for (const auto& [k, _] : c.ctx.entries) avoid.insert(k);
      cands.push_back(fresh_name(d.conclusion.term->name.empty()
                                     ? Name("x")
                                     : d.conclusion.term->name,
                                 avoid));
    }
    for (const auto& n : cands)
      if (alpha_eq(close_binder(c.term, n), d.conclusion.term->left)) {
        d.binder_name = n;
        break;
      }
  }
  return std::make_shared<Derivation>(std::move(d));
}

}  // namespace

DerivPtr read_derivation(std::string_view input) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::parse_error& e) {
    throw ParseError({static_cast<size_t>(e.byte), static_cast<size_t>(e.byte)},
                     e.what());
  }
  return from_json(j);
}

std::string write_derivation(const DerivPtr& d) {
  return to_json(d).dump(2) + "\n";
}

}  // namespace vsc
