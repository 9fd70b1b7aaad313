/*
 * Copyright (c) 2026 The seplog authors
 * SPDX-License-Identifier: MIT
 */
#ifndef SEPLOG_FORMULA_HPP
#define SEPLOG_FORMULA_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seplog/error.hpp"

namespace seplog {

using Value = std::int64_t;

// ---------------------------------------------------------------------------
// Terms: integer-sorted expressions over variables, literals, + and -.
// Immutable; copies share structure. `nil` is the integer constant 0 and
// carries no special meaning beyond that.
// ---------------------------------------------------------------------------

class Term {
public:
  enum class Kind { Var, Lit, Add, Sub };

  static Term var(std::string name) {
    return Term(std::make_shared<const Node>(
        Node{Kind::Var, std::move(name), 0, nullptr, nullptr}));
  }
  static Term lit(Value v) {
    return Term(
        std::make_shared<const Node>(Node{Kind::Lit, {}, v, nullptr, nullptr}));
  }
  static Term nil() { return lit(0); }
  static Term add(Term l, Term r) {
    return Term(std::make_shared<const Node>(
        Node{Kind::Add, {}, 0, std::move(l.node_), std::move(r.node_)}));
  }
  static Term sub(Term l, Term r) {
    return Term(std::make_shared<const Node>(
        Node{Kind::Sub, {}, 0, std::move(l.node_), std::move(r.node_)}));
  }

  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::Var; }
  bool is_lit() const { return node_->kind == Kind::Lit; }

  const std::string& var_name() const {
    require(Kind::Var, "var_name");
    return node_->name;
  }
  Value lit_value() const {
    require(Kind::Lit, "lit_value");
    return node_->value;
  }
  Term lhs() const {
    if (!node_->left) throw Error("term has no left operand");
    return Term(node_->left);
  }
  Term rhs() const {
    if (!node_->right) throw Error("term has no right operand");
    return Term(node_->right);
  }

  bool operator==(const Term& o) const { return equal(node_, o.node_); }
  bool operator!=(const Term& o) const { return !(*this == o); }

  std::string to_string() const {
    std::ostringstream os;
    print(os, *this, /*parenthesize=*/false);
    return os.str();
  }

  void collect_vars(std::vector<std::string>& out,
                    std::set<std::string>& seen) const {
    switch (kind()) {
      case Kind::Var:
        if (seen.insert(node_->name).second) out.push_back(node_->name);
        break;
      case Kind::Lit:
        break;
      case Kind::Add:
      case Kind::Sub:
        lhs().collect_vars(out, seen);
        rhs().collect_vars(out, seen);
        break;
    }
  }

private:
  struct Node {
    Kind kind;
    std::string name;
    Value value;
    std::shared_ptr<const Node> left, right;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  void require(Kind k, const char* what) const {
    if (node_->kind != k)
      throw Error(std::string("term accessor mismatch: ") + what);
  }

  static bool equal(const std::shared_ptr<const Node>& a,
                    const std::shared_ptr<const Node>& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Var: return a->name == b->name;
      case Kind::Lit: return a->value == b->value;
      default:
        return equal(a->left, b->left) && equal(a->right, b->right);
    }
  }

  static void print(std::ostringstream& os, const Term& t, bool parenthesize) {
    const bool compound = t.kind() == Kind::Add || t.kind() == Kind::Sub;
    if (parenthesize && compound) os << '(';
    switch (t.kind()) {
      case Kind::Var: os << t.var_name(); break;
      case Kind::Lit: os << t.lit_value(); break;
      case Kind::Add:
        print(os, t.lhs(), false);
        os << " + ";
        print(os, t.rhs(), true);  // + and - associate left
        break;
      case Kind::Sub:
        print(os, t.lhs(), false);
        os << " - ";
        print(os, t.rhs(), true);
        break;
    }
    if (parenthesize && compound) os << ')';
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Stacks: total assignments of integer values to variables.
// ---------------------------------------------------------------------------

class Stack {
public:
  Stack() = default;
  explicit Stack(std::map<std::string, Value> bindings)
      : bindings_(std::move(bindings)) {}

  void bind(const std::string& name, Value v) { bindings_[name] = v; }
  bool binds(const std::string& name) const { return bindings_.count(name) > 0; }

  Value value_of(const std::string& name) const {
    auto it = bindings_.find(name);
    if (it == bindings_.end())
      throw Error("unbound variable '" + name + "'");
    return it->second;
  }

  const std::map<std::string, Value>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }

  bool operator==(const Stack& o) const { return bindings_ == o.bindings_; }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : bindings_) {
      if (!first) os << ' ';
      os << k << '=' << v;
      first = false;
    }
    return os.str();
  }

private:
  std::map<std::string, Value> bindings_;
};

inline Value eval_term(const Stack& s, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return s.value_of(t.var_name());
    case Term::Kind::Lit: return t.lit_value();
    case Term::Kind::Add: return eval_term(s, t.lhs()) + eval_term(s, t.rhs());
    case Term::Kind::Sub: return eval_term(s, t.lhs()) - eval_term(s, t.rhs());
  }
  throw Error("corrupt term");
}

// ---------------------------------------------------------------------------
// Pure formulas: Boolean combinations of relational atoms over terms.
// ---------------------------------------------------------------------------

enum class RelOp { Eq, Ne, Lt, Le, Gt, Ge };

inline RelOp negate_rel(RelOp op) {
  switch (op) {
    case RelOp::Eq: return RelOp::Ne;
    case RelOp::Ne: return RelOp::Eq;
    case RelOp::Lt: return RelOp::Ge;
    case RelOp::Le: return RelOp::Gt;
    case RelOp::Gt: return RelOp::Le;
    case RelOp::Ge: return RelOp::Lt;
  }
  throw Error("corrupt relational operator");
}

inline const char* rel_symbol(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
  }
  throw Error("corrupt relational operator");
}

inline bool eval_rel(RelOp op, Value l, Value r) {
  switch (op) {
    case RelOp::Eq: return l == r;
    case RelOp::Ne: return l != r;
    case RelOp::Lt: return l < r;
    case RelOp::Le: return l <= r;
    case RelOp::Gt: return l > r;
    case RelOp::Ge: return l >= r;
  }
  throw Error("corrupt relational operator");
}

class PureFormula {
public:
  enum class Kind { True, False, Rel, And, Or, Not, Implies };

  PureFormula() : PureFormula(top()) {}

  // Plain constructors build the node verbatim; parsing relies on this so
  // that printing round-trips. An empty conjunction evaluates to true, an
  // empty disjunction to false.
  static PureFormula top() { return PureFormula(make(Kind::True)); }
  static PureFormula bottom() { return PureFormula(make(Kind::False)); }
  static PureFormula rel(RelOp op, Term l, Term r) {
    auto n = make(Kind::Rel);
    n->op = op;
    n->terms.push_back(std::move(l));
    n->terms.push_back(std::move(r));
    return PureFormula(std::move(n));
  }
  static PureFormula conj(std::vector<PureFormula> parts) {
    auto n = make(Kind::And);
    n->parts = std::move(parts);
    return PureFormula(std::move(n));
  }
  static PureFormula disj(std::vector<PureFormula> parts) {
    auto n = make(Kind::Or);
    n->parts = std::move(parts);
    return PureFormula(std::move(n));
  }
  static PureFormula negation(PureFormula f) {
    auto n = make(Kind::Not);
    n->parts.push_back(std::move(f));
    return PureFormula(std::move(n));
  }
  static PureFormula implication(PureFormula premise, PureFormula conclusion) {
    auto n = make(Kind::Implies);
    n->parts.push_back(std::move(premise));
    n->parts.push_back(std::move(conclusion));
    return PureFormula(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  RelOp rel_op() const {
    require(Kind::Rel, "rel_op");
    return node_->op;
  }
  const Term& rel_lhs() const {
    require(Kind::Rel, "rel_lhs");
    return node_->terms[0];
  }
  const Term& rel_rhs() const {
    require(Kind::Rel, "rel_rhs");
    return node_->terms[1];
  }
  const std::vector<PureFormula>& parts() const { return node_->parts; }
  const PureFormula& negated() const {
    require(Kind::Not, "negated");
    return node_->parts[0];
  }
  const PureFormula& premise() const {
    require(Kind::Implies, "premise");
    return node_->parts[0];
  }
  const PureFormula& conclusion() const {
    require(Kind::Implies, "conclusion");
    return node_->parts[1];
  }

  bool operator==(const PureFormula& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
      case Kind::True:
      case Kind::False:
        return true;
      case Kind::Rel:
        return node_->op == o.node_->op && node_->terms[0] == o.node_->terms[0] &&
               node_->terms[1] == o.node_->terms[1];
      default:
        return node_->parts == o.node_->parts;
    }
  }
  bool operator!=(const PureFormula& o) const { return !(*this == o); }

  std::string to_string() const {
    std::ostringstream os;
    print(os, Ctx::Disj);
    return os.str();
  }

  void collect_vars(std::vector<std::string>& out,
                    std::set<std::string>& seen) const {
    switch (kind()) {
      case Kind::True:
      case Kind::False:
        break;
      case Kind::Rel:
        rel_lhs().collect_vars(out, seen);
        rel_rhs().collect_vars(out, seen);
        break;
      default:
        for (const auto& p : node_->parts) p.collect_vars(out, seen);
    }
  }

private:
  struct Node {
    Kind kind;
    RelOp op = RelOp::Eq;
    std::vector<Term> terms;
    std::vector<PureFormula> parts;
  };

  explicit PureFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  explicit PureFormula(std::shared_ptr<Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }

  void require(Kind k, const char* what) const {
    if (node_->kind != k)
      throw Error(std::string("formula accessor mismatch: ") + what);
  }

  enum class Ctx { Disj, Conj, Lit };

  void print(std::ostringstream& os, Ctx ctx) const {
    switch (kind()) {
      case Kind::True: os << "true"; return;
      case Kind::False: os << "false"; return;
      case Kind::Rel:
        os << rel_lhs().to_string() << ' ' << rel_symbol(rel_op()) << ' '
           << rel_rhs().to_string();
        return;
      case Kind::Not:
        os << "!(";
        negated().print(os, Ctx::Disj);
        os << ')';
        return;
      case Kind::And: {
        if (parts().empty()) { os << "true"; return; }
        const bool paren = ctx == Ctx::Lit;
        if (paren) os << '(';
        for (std::size_t i = 0; i < parts().size(); ++i) {
          if (i) os << " & ";
          parts()[i].print(os, Ctx::Lit);
        }
        if (paren) os << ')';
        return;
      }
      case Kind::Or: {
        if (parts().empty()) { os << "false"; return; }
        const bool paren = ctx != Ctx::Disj;
        if (paren) os << '(';
        for (std::size_t i = 0; i < parts().size(); ++i) {
          if (i) os << " | ";
          parts()[i].print(os, Ctx::Conj);
        }
        if (paren) os << ')';
        return;
      }
      case Kind::Implies:
        // Not part of the surface grammar; shown for diagnostics only.
        os << '(';
        premise().print(os, Ctx::Disj);
        os << " -> ";
        conclusion().print(os, Ctx::Disj);
        os << ')';
        return;
    }
  }

  std::shared_ptr<const Node> node_;
};

inline bool eval_pure(const Stack& s, const PureFormula& f) {
  switch (f.kind()) {
    case PureFormula::Kind::True: return true;
    case PureFormula::Kind::False: return false;
    case PureFormula::Kind::Rel:
      return eval_rel(f.rel_op(), eval_term(s, f.rel_lhs()),
                      eval_term(s, f.rel_rhs()));
    case PureFormula::Kind::And:
      return std::all_of(f.parts().begin(), f.parts().end(),
                         [&](const PureFormula& p) { return eval_pure(s, p); });
    case PureFormula::Kind::Or:
      return std::any_of(f.parts().begin(), f.parts().end(),
                         [&](const PureFormula& p) { return eval_pure(s, p); });
    case PureFormula::Kind::Not: return !eval_pure(s, f.negated());
    case PureFormula::Kind::Implies:
      return !eval_pure(s, f.premise()) || eval_pure(s, f.conclusion());
  }
  throw Error("corrupt formula");
}

// Simplifying builders. These fold constants and syntactically trivial
// relations (t = t, literal comparisons) so condition generators produce the
// compact shapes one writes by hand. Parsing never uses them.

inline PureFormula f_rel(RelOp op, Term l, Term r) {
  if (l == r) {
    switch (op) {
      case RelOp::Eq:
      case RelOp::Le:
      case RelOp::Ge:
        return PureFormula::top();
      default:
        return PureFormula::bottom();
    }
  }
  if (l.is_lit() && r.is_lit())
    return eval_rel(op, l.lit_value(), r.lit_value()) ? PureFormula::top()
                                                      : PureFormula::bottom();
  return PureFormula::rel(op, std::move(l), std::move(r));
}

inline PureFormula f_not(const PureFormula& f) {
  switch (f.kind()) {
    case PureFormula::Kind::True: return PureFormula::bottom();
    case PureFormula::Kind::False: return PureFormula::top();
    case PureFormula::Kind::Rel:
      return PureFormula::rel(negate_rel(f.rel_op()), f.rel_lhs(), f.rel_rhs());
    case PureFormula::Kind::Not: return f.negated();
    default: return PureFormula::negation(f);
  }
}

inline PureFormula f_and(std::vector<PureFormula> parts) {
  std::vector<PureFormula> kept;
  for (auto& p : parts) {
    if (p.is_false()) return PureFormula::bottom();
    if (!p.is_true()) kept.push_back(std::move(p));
  }
  if (kept.empty()) return PureFormula::top();
  if (kept.size() == 1) return kept[0];
  return PureFormula::conj(std::move(kept));
}

inline PureFormula f_or(std::vector<PureFormula> parts) {
  std::vector<PureFormula> kept;
  for (auto& p : parts) {
    if (p.is_true()) return PureFormula::top();
    if (!p.is_false()) kept.push_back(std::move(p));
  }
  if (kept.empty()) return PureFormula::bottom();
  if (kept.size() == 1) return kept[0];
  return PureFormula::disj(std::move(kept));
}

inline PureFormula f_implies(PureFormula premise, PureFormula conclusion) {
  if (premise.is_false() || conclusion.is_true()) return PureFormula::top();
  if (premise.is_true()) return conclusion;
  return PureFormula::implication(std::move(premise), std::move(conclusion));
}

// ---------------------------------------------------------------------------
// Spatial atoms and conjunctions.
// ---------------------------------------------------------------------------

class SpatialAtom {
public:
  enum class Kind { Emp, Next, Lseg };

  static SpatialAtom emp() { return SpatialAtom(Kind::Emp, std::nullopt); }
  static SpatialAtom next(Term src, Term dst) {
    return SpatialAtom(Kind::Next,
                       std::make_pair(std::move(src), std::move(dst)));
  }
  static SpatialAtom lseg(Term src, Term dst) {
    return SpatialAtom(Kind::Lseg,
                       std::make_pair(std::move(src), std::move(dst)));
  }

  Kind kind() const { return kind_; }
  bool is_emp() const { return kind_ == Kind::Emp; }

  const Term& src() const {
    if (!args_) throw Error("emp has no source");
    return args_->first;
  }
  const Term& dst() const {
    if (!args_) throw Error("emp has no destination");
    return args_->second;
  }

  bool operator==(const SpatialAtom& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Emp) return true;
    return args_->first == o.args_->first && args_->second == o.args_->second;
  }
  bool operator!=(const SpatialAtom& o) const { return !(*this == o); }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Emp: return "emp";
      case Kind::Next:
        return "next(" + src().to_string() + ", " + dst().to_string() + ")";
      case Kind::Lseg:
        return "lseg(" + src().to_string() + ", " + dst().to_string() + ")";
    }
    throw Error("corrupt spatial atom");
  }

  void collect_vars(std::vector<std::string>& out,
                    std::set<std::string>& seen) const {
    if (kind_ == Kind::Emp) return;
    src().collect_vars(out, seen);
    dst().collect_vars(out, seen);
  }

private:
  SpatialAtom(Kind k, std::optional<std::pair<Term, Term>> args)
      : kind_(k), args_(std::move(args)) {}

  Kind kind_;
  std::optional<std::pair<Term, Term>> args_;
};

/// A spatial conjunction kept as an order-stable multiset of atoms.
/// Duplicates are significant: next(x,y) * next(x,y) is not next(x,y).
class SpatialConj {
public:
  SpatialConj() = default;
  explicit SpatialConj(std::vector<SpatialAtom> atoms)
      : atoms_(std::move(atoms)) {}

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const std::vector<SpatialAtom>& atoms() const { return atoms_; }
  const SpatialAtom& operator[](std::size_t i) const { return atoms_[i]; }

  bool contains(const SpatialAtom& a) const {
    return std::find(atoms_.begin(), atoms_.end(), a) != atoms_.end();
  }
  std::size_t count(const SpatialAtom& a) const {
    return std::count(atoms_.begin(), atoms_.end(), a);
  }

  /// Removes exactly one occurrence (the leftmost) of `a`.
  SpatialConj remove_one(const SpatialAtom& a) const {
    auto it = std::find(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end())
      throw Error("atom " + a.to_string() + " not present in conjunction");
    std::vector<SpatialAtom> rest(atoms_.begin(), it);
    rest.insert(rest.end(), std::next(it), atoms_.end());
    return SpatialConj(std::move(rest));
  }

  SpatialConj append(const SpatialAtom& a) const {
    std::vector<SpatialAtom> ext(atoms_);
    ext.push_back(a);
    return SpatialConj(std::move(ext));
  }

  SpatialConj star(const SpatialConj& o) const {
    std::vector<SpatialAtom> ext(atoms_);
    ext.insert(ext.end(), o.atoms_.begin(), o.atoms_.end());
    return SpatialConj(std::move(ext));
  }

  bool multiset_includes(const SpatialConj& sub) const {
    std::vector<bool> used(atoms_.size(), false);
    for (const auto& a : sub.atoms_) {
      bool found = false;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (!used[i] && atoms_[i] == a) {
          used[i] = true;
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  bool multiset_equal(const SpatialConj& o) const {
    return size() == o.size() && multiset_includes(o);
  }

  bool operator==(const SpatialConj& o) const { return atoms_ == o.atoms_; }
  bool operator!=(const SpatialConj& o) const { return !(*this == o); }

  std::string to_string() const {
    if (atoms_.empty()) return "emp";
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i) out += " * ";
      out += atoms_[i].to_string();
    }
    return out;
  }

  void collect_vars(std::vector<std::string>& out,
                    std::set<std::string>& seen) const {
    for (const auto& a : atoms_) a.collect_vars(out, seen);
  }

private:
  std::vector<SpatialAtom> atoms_;
};

inline SpatialConj conj_remove(const SpatialConj& sigma, const SpatialAtom& a) {
  return sigma.remove_one(a);
}

// ---------------------------------------------------------------------------
// Heaps: finite partial maps from integer locations to integer values.
// ---------------------------------------------------------------------------

class Heap {
public:
  Heap() = default;
  explicit Heap(std::map<Value, Value> cells) : cells_(std::move(cells)) {}

  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }
  bool contains(Value loc) const { return cells_.count(loc) > 0; }

  Value at(Value loc) const {
    auto it = cells_.find(loc);
    if (it == cells_.end())
      throw Error("location " + std::to_string(loc) + " not allocated");
    return it->second;
  }

  /// Adds a cell; the location must be fresh.
  Heap with_cell(Value loc, Value val) const {
    if (contains(loc))
      throw Error("location " + std::to_string(loc) + " already allocated");
    std::map<Value, Value> ext(cells_);
    ext.emplace(loc, val);
    return Heap(std::move(ext));
  }

  bool disjoint_with(const Heap& o) const {
    const Heap& small = size() <= o.size() ? *this : o;
    const Heap& large = size() <= o.size() ? o : *this;
    for (const auto& [loc, _] : small.cells_)
      if (large.contains(loc)) return false;
    return true;
  }

  /// The separating union; absent when the domains overlap.
  static std::optional<Heap> disjoint_union(const Heap& a, const Heap& b) {
    if (!a.disjoint_with(b)) return std::nullopt;
    std::map<Value, Value> cells(a.cells_);
    cells.insert(b.cells_.begin(), b.cells_.end());
    return Heap(std::move(cells));
  }

  const std::map<Value, Value>& cells() const { return cells_; }

  bool operator==(const Heap& o) const { return cells_ == o.cells_; }
  bool operator!=(const Heap& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string out;
    bool first = true;
    for (const auto& [loc, val] : cells_) {
      if (!first) out += ", ";
      out += std::to_string(loc) + " -> " + std::to_string(val);
      first = false;
    }
    return out;
  }

private:
  std::map<Value, Value> cells_;
};

// ---------------------------------------------------------------------------
// Entailments.
// ---------------------------------------------------------------------------

struct Entailment {
  PureFormula ante_pure;
  SpatialConj ante_spatial;
  PureFormula cons_pure;
  SpatialConj cons_spatial;

  bool operator==(const Entailment& o) const {
    return ante_pure == o.ante_pure && ante_spatial == o.ante_spatial &&
           cons_pure == o.cons_pure && cons_spatial == o.cons_spatial;
  }

  std::string to_string() const {
    std::string out;
    if (!ante_pure.is_true()) out += ante_pure.to_string() + " : ";
    out += ante_spatial.to_string() + " |- ";
    if (!cons_pure.is_true()) out += cons_pure.to_string() + " : ";
    out += cons_spatial.to_string();
    return out;
  }
};

/// All variable names of the entailment, in first-occurrence order over
/// antecedent pure, antecedent spatial, consequent pure, consequent spatial.
inline std::vector<std::string> free_vars(const Entailment& e) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  e.ante_pure.collect_vars(out, seen);
  e.ante_spatial.collect_vars(out, seen);
  e.cons_pure.collect_vars(out, seen);
  e.cons_spatial.collect_vars(out, seen);
  return out;
}

inline std::vector<std::string> free_vars(const SpatialConj& sigma) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  sigma.collect_vars(out, seen);
  return out;
}

inline std::vector<std::string> free_vars(const PureFormula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  f.collect_vars(out, seen);
  return out;
}

}  // namespace seplog

#endif
