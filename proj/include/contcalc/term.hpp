#pragma once

// Names, terms, rule templates and programs.
//
// A term is stored in spine form: a head name plus the ordered list of
// arguments it is dotted with, so `n.t1.t2` is {head = n, args = [t1, t2]}.
// Terms are immutable and share structure through reference counting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "contcalc/diagnostic.hpp"

namespace contcalc {

/// Identifier naming functionality; the only thing that can head a term.
/// Parser-produced names start with an uppercase letter; names starting
/// with '_' are reserved for generated fresh names.
class Name {
 public:
  Name() = default;
  explicit Name(std::string text) : text_(std::move(text)) {}

  const std::string& text() const noexcept { return text_; }
  bool reserved() const noexcept { return !text_.empty() && text_.front() == '_'; }

  friend bool operator==(const Name&, const Name&) = default;
  friend auto operator<=>(const Name&, const Name&) = default;

 private:
  std::string text_;
};

using NameSet = std::set<Name>;

/// Rule parameter; lowercase-initial in source, never part of a term.
struct Var {
  std::string text;

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

namespace detail {
inline std::size_t mix_hash(std::size_t seed, std::size_t value) noexcept {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}
}  // namespace detail

class Term {
  struct Node;

 public:
  explicit Term(Name head) : Term(std::move(head), {}) {}
  Term(Name head, std::vector<Term> args)
      : node_(std::make_shared<Node>(std::move(head), std::move(args))) {}

  /// Convenience for a bare name term.
  static Term atom(std::string text) { return Term(Name(std::move(text))); }

  const Name& head() const noexcept { return node_->head; }
  std::span<const Term> args() const noexcept { return node_->args; }
  std::size_t length() const noexcept { return node_->args.size(); }

  /// Structural hash, cached at construction.
  std::size_t hash() const noexcept { return node_->hash; }
  /// Number of name occurrences in the term, saturating at SIZE_MAX.
  std::size_t node_count() const noexcept { return node_->count; }

  /// Calls `pred` on each subterm (this one included) until it returns
  /// true. Shared subterms of large terms are visited once.
  template <class Pred>
  bool any_subterm(Pred&& pred) const {
    const bool memo = node_count() > kMemoThreshold;
    std::unordered_set<const Node*> seen;
    std::vector<const Term*> pending{this};
    while (!pending.empty()) {
      const Term* cur = pending.back();
      pending.pop_back();
      if (memo && !seen.insert(cur->node_.get()).second) continue;
      if (pred(*cur)) return true;
      for (const auto& a : cur->args()) pending.push_back(&a);
    }
    return false;
  }

  /// `this.arg`
  Term dot(Term arg) const {
    std::vector<Term> args(node_->args);
    args.push_back(std::move(arg));
    return Term(node_->head, std::move(args));
  }

  /// `this.a1.….ak`
  Term dot(std::span<const Term> more) const {
    if (more.empty()) return *this;
    std::vector<Term> args;
    args.reserve(node_->args.size() + more.size());
    args.insert(args.end(), node_->args.begin(), node_->args.end());
    args.insert(args.end(), more.begin(), more.end());
    return Term(node_->head, std::move(args));
  }

  bool shares_node_with(const Term& other) const noexcept { return node_ == other.node_; }

  // Iterative so that very deep terms (long reductions) compare without
  // exhausting the stack. Rules that duplicate an argument build terms with
  // shared subterms; for large terms each node pair is compared once, which
  // keeps two separately built copies from unfolding exponentially.
  friend bool operator==(const Term& a, const Term& b) {
    using NodePair = std::pair<const Node*, const Node*>;
    struct PairHash {
      std::size_t operator()(const NodePair& p) const noexcept {
        return detail::mix_hash(std::hash<const void*>{}(p.first), std::hash<const void*>{}(p.second));
      }
    };
    const bool memo = a.node_count() > kMemoThreshold;
    std::unordered_set<NodePair, PairHash> done;
    std::vector<NodePair> pending{{a.node_.get(), b.node_.get()}};
    while (!pending.empty()) {
      auto [x, y] = pending.back();
      pending.pop_back();
      if (x == y) continue;
      if (x->hash != y->hash || x->count != y->count || x->args.size() != y->args.size() ||
          x->head != y->head)
        return false;
      if (memo && !done.insert({x, y}).second) continue;
      for (std::size_t i = 0; i < x->args.size(); ++i)
        pending.emplace_back(x->args[i].node_.get(), y->args[i].node_.get());
    }
    return true;
  }

 private:
  static constexpr std::size_t kMemoThreshold = 1024;

  struct Node {
    Node(Name h, std::vector<Term> a) : head(std::move(h)), args(std::move(a)) {
      hash = std::hash<std::string>{}(head.text());
      count = 1;
      for (const auto& t : args) {
        hash = detail::mix_hash(hash, t.hash());
        count = t.node_count() > SIZE_MAX - count ? SIZE_MAX : count + t.node_count();
      }
      hash = detail::mix_hash(hash, args.size());
    }

    // Unlinks uniquely owned children one level at a time so destroying a
    // deep term does not recurse.
    ~Node() {
      std::vector<std::shared_ptr<const Node>> pending;
      auto detach = [&pending](std::vector<Term>& children) {
        for (auto& child : children)
          if (child.node_ && child.node_.use_count() == 1) pending.push_back(std::move(child.node_));
      };
      detach(args);
      while (!pending.empty()) {
        std::shared_ptr<const Node> node = std::move(pending.back());
        pending.pop_back();
        detach(const_cast<Node&>(*node).args);
      }
    }

    Name head;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t count = 0;
  };

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

/// Right-hand side of a rule: like a term, but variables may appear
/// anywhere, including the head (`Goto.x -> x`).
struct Rhs {
  std::variant<Name, Var> head;
  std::vector<Rhs> args;
  SourcePos pos;

  friend bool operator==(const Rhs& a, const Rhs& b) {
    return a.head == b.head && a.args == b.args;
  }
};

/// `head.p1.….pk -> rhs`
struct Rule {
  Name head;
  std::vector<Var> params;
  Rhs rhs;
  SourcePos pos;
  std::vector<SourcePos> param_pos;

  std::size_t arity() const noexcept { return params.size(); }

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.head == b.head && a.params == b.params && a.rhs == b.rhs;
  }
};

class Program;
Checked<Program> validate_program(std::vector<Rule> rules);

/// Finite set of rules, at most one per name. Rules keep insertion order for
/// printing; equality ignores order. Only validate_program constructs a
/// non-empty program.
class Program {
 public:
  Program() = default;

  const Rule* find(const Name& name) const {
    auto it = index_.find(name.text());
    return it == index_.end() ? nullptr : &rules_[it->second];
  }
  bool defines(const Name& name) const { return find(name) != nullptr; }
  std::optional<std::size_t> arity(const Name& name) const {
    const Rule* rule = find(name);
    if (!rule) return std::nullopt;
    return rule->arity();
  }

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

  /// Every name occurring in a rule head or right-hand side.
  NameSet mentioned_names() const;
  bool mentions(const Name& name) const { return mentioned_names().contains(name); }

  friend bool operator==(const Program& a, const Program& b) {
    if (a.size() != b.size()) return false;
    for (const auto& rule : a.rules_) {
      const Rule* other = b.find(rule.head);
      if (!other || !(*other == rule)) return false;
    }
    return true;
  }

 private:
  friend Checked<Program> validate_program(std::vector<Rule> rules);

  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Name collection

inline void collect_names(const Term& t, NameSet& out) {
  t.any_subterm([&out](const Term& sub) {
    out.insert(sub.head());
    return false;
  });
}

inline NameSet names_of(const Term& t) {
  NameSet out;
  collect_names(t, out);
  return out;
}

inline bool mentions(const Term& t, const Name& name) {
  return t.any_subterm([&name](const Term& sub) { return sub.head() == name; });
}

inline void collect_names(const Rhs& rhs, NameSet& out) {
  if (const Name* n = std::get_if<Name>(&rhs.head)) out.insert(*n);
  for (const auto& a : rhs.args) collect_names(a, out);
}

inline void collect_vars(const Rhs& rhs, std::vector<std::pair<Var, SourcePos>>& out) {
  if (const Var* v = std::get_if<Var>(&rhs.head)) out.emplace_back(*v, rhs.pos);
  for (const auto& a : rhs.args) collect_vars(a, out);
}

inline NameSet Program::mentioned_names() const {
  NameSet out;
  for (const auto& rule : rules_) {
    out.insert(rule.head);
    collect_names(rule.rhs, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Head, length, arity

inline const Name& head(const Term& t) noexcept { return t.head(); }
inline std::size_t length(const Term& t) noexcept { return t.length(); }

inline std::optional<std::size_t> arity_of_name(const Program& p, const Name& n) {
  return p.arity(n);
}

/// arity(head) − length, or nothing when the head is undefined or the term
/// carries more arguments than its head accepts.
inline std::optional<std::size_t> arity_of_term(const Program& p, const Term& t) {
  auto k = p.arity(t.head());
  if (!k || *k < t.length()) return std::nullopt;
  return *k - t.length();
}

// ---------------------------------------------------------------------------
// Instantiation and substitution

class UnboundVariableError : public std::logic_error {
 public:
  explicit UnboundVariableError(const Var& v)
      : std::logic_error("unbound variable '" + v.text + "' during instantiation") {}
};

namespace detail {
template <class Lookup>
Term instantiate_with(const Rhs& rhs, const Lookup& lookup) {
  std::vector<Term> args;
  args.reserve(rhs.args.size());
  for (const auto& a : rhs.args) args.push_back(instantiate_with(a, lookup));
  if (const Name* n = std::get_if<Name>(&rhs.head)) return Term(*n, std::move(args));
  const Term& bound = lookup(std::get<Var>(rhs.head));
  return bound.dot(args);
}
}  // namespace detail

/// rhs[x⃗ := t⃗]. A variable in head position splices its binding's spine:
/// `x.a` with x := M.b gives M.b.a.
inline Term instantiate(const Rhs& rhs, const std::map<Var, Term>& binding) {
  return detail::instantiate_with(rhs, [&](const Var& v) -> const Term& {
    auto it = binding.find(v);
    if (it == binding.end()) throw UnboundVariableError(v);
    return it->second;
  });
}

/// Positional form used by the evaluator: params[i] := args[i].
inline Term instantiate(const Rhs& rhs, std::span<const Var> params, std::span<const Term> args) {
  return detail::instantiate_with(rhs, [&](const Var& v) -> const Term& {
    for (std::size_t i = 0; i < params.size() && i < args.size(); ++i)
      if (params[i] == v) return args[i];
    throw UnboundVariableError(v);
  });
}

/// t[from := to], splicing `to`'s spine wherever `from` is a head.
inline Term substitute_name(const Term& t, const Name& from, const Term& to) {
  std::vector<Term> args;
  args.reserve(t.length());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substitute_name(a, from, to));
    changed = changed || !args.back().shares_node_with(a);
  }
  if (t.head() == from) return to.dot(args);
  if (!changed) return t;
  return Term(t.head(), std::move(args));
}

/// Simultaneous renaming of names.
inline Term rename(const Term& t, const std::map<Name, Name>& mapping) {
  if (mapping.empty()) return t;
  std::vector<Term> args;
  args.reserve(t.length());
  for (const auto& a : t.args()) args.push_back(rename(a, mapping));
  auto it = mapping.find(t.head());
  return Term(it == mapping.end() ? t.head() : it->second, std::move(args));
}

inline Rhs rename(const Rhs& rhs, const std::map<Name, Name>& mapping) {
  Rhs out{rhs.head, {}, rhs.pos};
  if (const Name* n = std::get_if<Name>(&rhs.head)) {
    auto it = mapping.find(*n);
    if (it != mapping.end()) out.head = it->second;
  }
  out.args.reserve(rhs.args.size());
  for (const auto& a : rhs.args) out.args.push_back(rename(a, mapping));
  return out;
}

/// View of a term as a (variable-free) right-hand side.
inline Rhs to_rhs(const Term& t) {
  Rhs out{t.head(), {}, {}};
  out.args.reserve(t.length());
  for (const auto& a : t.args()) out.args.push_back(to_rhs(a));
  return out;
}

// ---------------------------------------------------------------------------
// Fresh names

/// Deterministic supply of reserved names `_F0, _F1, …` that avoids a given
/// set and everything it has already handed out.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(NameSet avoid) : avoid_(std::move(avoid)) {}

  void avoid(const Name& n) { avoid_.insert(n); }
  void avoid(const NameSet& ns) { avoid_.insert(ns.begin(), ns.end()); }

  Name next() {
    for (;;) {
      Name candidate("_F" + std::to_string(counter_++));
      if (avoid_.insert(candidate).second) return candidate;
    }
  }

 private:
  NameSet avoid_;
  std::size_t counter_ = 0;
};

inline Name fresh_name(const NameSet& avoid) { return FreshNames(avoid).next(); }

class NotFreshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Validation

inline Checked<Program> validate_program(std::vector<Rule> rules) {
  Diagnostics diags;
  Program program;
  for (auto& rule : rules) {
    bool ok = true;
    auto pos_of_param = [&](std::size_t i) {
      return i < rule.param_pos.size() ? rule.param_pos[i] : rule.pos;
    };

    for (std::size_t i = 0; i < rule.params.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (rule.params[j] == rule.params[i]) {
          diags.push_back({pos_of_param(i), DiagnosticKind::Validation,
                           DiagnosticCode::RepeatedParameter,
                           "parameter '" + rule.params[i].text + "' occurs more than once in rule for '" +
                               rule.head.text() + "'"});
          ok = false;
          break;
        }
      }
    }

    std::vector<std::pair<Var, SourcePos>> used;
    collect_vars(rule.rhs, used);
    std::set<Var> reported;
    for (const auto& [v, pos] : used) {
      bool bound = false;
      for (const auto& p : rule.params) bound = bound || p == v;
      if (!bound && reported.insert(v).second) {
        diags.push_back({pos.line ? pos : rule.pos, DiagnosticKind::Validation,
                         DiagnosticCode::UnboundVariable,
                         "variable '" + v.text + "' is not a parameter of rule for '" +
                             rule.head.text() + "'"});
        ok = false;
      }
    }

    if (program.index_.contains(rule.head.text())) {
      diags.push_back({rule.pos, DiagnosticKind::Validation, DiagnosticCode::DuplicateDefinition,
                       "name '" + rule.head.text() + "' is already defined"});
      ok = false;
    }

    if (ok) {
      program.index_.emplace(rule.head.text(), program.rules_.size());
      program.rules_.push_back(std::move(rule));
    }
  }
  if (!diags.empty()) return unexpected(std::move(diags));
  return program;
}

/// Renames names throughout both sides of every rule. Replacement names must
/// be pairwise distinct and not mentioned in the program.
inline Program fresh_substitution(const Program& p, const std::map<Name, Name>& mapping) {
  NameSet mentioned = p.mentioned_names();
  NameSet targets;
  for (const auto& [from, to] : mapping) {
    if (!targets.insert(to).second)
      throw NotFreshError("replacement name '" + to.text() + "' is used twice");
    if (mentioned.contains(to))
      throw NotFreshError("replacement name '" + to.text() + "' is mentioned in the program");
  }
  std::vector<Rule> rules;
  rules.reserve(p.size());
  for (const auto& rule : p.rules()) {
    Rule r = rule;
    if (auto it = mapping.find(r.head); it != mapping.end()) r.head = it->second;
    r.rhs = rename(rule.rhs, mapping);
    rules.push_back(std::move(r));
  }
  // Injective renaming of a valid program stays valid.
  return std::move(validate_program(std::move(rules))).value();
}

}  // namespace contcalc

template <>
struct std::hash<contcalc::Name> {
  std::size_t operator()(const contcalc::Name& n) const noexcept {
    return std::hash<std::string>{}(n.text());
  }
};
