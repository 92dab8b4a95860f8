#pragma once

// Head reduction. Only the head of a term is ever rewritten: a term
// `n.t1.….tk` steps iff n has a rule with exactly k parameters.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "contcalc/parser.hpp"
#include "contcalc/term.hpp"

namespace contcalc {

inline constexpr std::size_t kDefaultBudget = 1'000'000;

enum class Category { Undefined, Incomplete, Complete, Invalid };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::Undefined: return "undefined";
    case Category::Incomplete: return "incomplete";
    case Category::Complete: return "complete";
    case Category::Invalid: return "invalid";
  }
  return "?";
}

struct Classification {
  Category category;
  std::size_t arity = 0;  // remaining arity; nonzero only for Incomplete

  friend bool operator==(const Classification&, const Classification&) = default;
};

inline Classification classify(const Program& p, const Term& t) {
  if (!p.defines(t.head())) return {Category::Undefined};
  auto k = arity_of_term(p, t);
  if (!k) return {Category::Invalid};
  if (*k == 0) return {Category::Complete};
  return {Category::Incomplete, *k};
}

/// The successor of t, if t is complete.
inline std::optional<Term> next(const Program& p, const Term& t) {
  const Rule* rule = p.find(t.head());
  if (!rule || rule->arity() != t.length()) return std::nullopt;
  return instantiate(rule->rhs, rule->params, t.args());
}

struct Final {
  Term term;
  std::size_t steps;
  friend bool operator==(const Final&, const Final&) = default;
};
struct BudgetExceeded {
  Term term;
  std::size_t steps;
  friend bool operator==(const BudgetExceeded&, const BudgetExceeded&) = default;
};
/// `term` recurred; it was produced again after `steps` steps.
struct CycleDetected {
  Term term;
  std::size_t steps;
  friend bool operator==(const CycleDetected&, const CycleDetected&) = default;
};

using ReductionOutcome = std::variant<Final, BudgetExceeded, CycleDetected>;

inline const Term& outcome_term(const ReductionOutcome& o) {
  return std::visit([](const auto& x) -> const Term& { return x.term; }, o);
}
inline std::size_t outcome_steps(const ReductionOutcome& o) {
  return std::visit([](const auto& x) { return x.steps; }, o);
}
inline bool is_final(const ReductionOutcome& o) { return std::holds_alternative<Final>(o); }

namespace detail {
// Shared loop for reduce and trace; `visit` sees every term including t0.
template <class Visit>
ReductionOutcome run(const Program& p, Term t, std::size_t budget, bool detect_cycles, Visit&& visit) {
  std::unordered_set<Term, TermHash> seen;
  if (detect_cycles) seen.insert(t);
  visit(t);
  std::size_t steps = 0;
  for (;;) {
    auto succ = next(p, t);
    if (!succ) return Final{std::move(t), steps};
    if (steps == budget) return BudgetExceeded{std::move(t), steps};
    t = std::move(*succ);
    ++steps;
    visit(t);
    if (detect_cycles && !seen.insert(t).second) return CycleDetected{std::move(t), steps};
  }
}
}  // namespace detail

/// Iterates `next` until a final term, `budget` steps, or (optionally) a
/// repeated term. A repeat proves divergence since reduction is deterministic.
inline ReductionOutcome reduce(const Program& p, const Term& t, std::size_t budget = kDefaultBudget,
                               bool detect_cycles = false) {
  return detail::run(p, t, budget, detect_cycles, [](const Term&) {});
}

struct Trace {
  std::vector<Term> terms;
  ReductionOutcome outcome;
};

inline Trace trace(const Program& p, const Term& t, std::size_t budget = kDefaultBudget,
                   bool detect_cycles = true) {
  std::vector<Term> terms;
  auto outcome = detail::run(p, t, budget, detect_cycles, [&](const Term& x) { terms.push_back(x); });
  return Trace{std::move(terms), std::move(outcome)};
}

/// Terminal line of the trace format, e.g. `-- final (undefined) after 41 steps`.
inline std::string format_outcome_line(const Program& p, const ReductionOutcome& o) {
  if (const auto* f = std::get_if<Final>(&o))
    return "-- final (" + std::string(to_string(classify(p, f->term).category)) + ") after " +
           std::to_string(f->steps) + " steps";
  if (const auto* b = std::get_if<BudgetExceeded>(&o))
    return "-- budget exceeded after " + std::to_string(b->steps) + " steps";
  return "-- cycle detected at step " + std::to_string(std::get<CycleDetected>(o).steps);
}

/// Line i is `<i>\t<term>`, followed by the outcome line; every line ends in '\n'.
inline std::string format_trace(const Program& p, const Trace& tr) {
  std::string out;
  for (std::size_t i = 0; i < tr.terms.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += format_term(tr.terms[i]);
    out += '\n';
  }
  out += format_outcome_line(p, tr.outcome);
  out += '\n';
  return out;
}

}  // namespace contcalc
