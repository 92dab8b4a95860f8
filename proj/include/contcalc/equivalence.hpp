#pragma once

// Bounded checkers for common reduct and observational equivalence, and
// program combination.
//
// Observational equivalence is undecidable, so obs_equiv answers in three
// values. Each decided answer rests on a theorem about the calculus:
//
//  * Equivalent, common reduct: M, N have arity k and M.f1.….fk, N.f1.….fk
//    (fi fresh) have a common reduct. Freshness lifts this to all argument
//    terms, which is sufficient for equivalence.
//  * Equivalent, structural: M, N have arity k and the probes reach finals
//    g.t1.….tn and g.u1.….un with g undefined, no ti/ui mentioning a probe,
//    and ti ≈ ui (checked recursively). With a fresh helper rule
//    H.a1.….an.x1.….xk -> g.a1.….an (xi.a1.….an when g is the i-th
//    probe), M ≈ H.t⃗ ≈ H.u⃗ ≈ N by the common
//    reduct case, congruence of ≈ and transitivity; the helper is
//    unobservable because its name is mentioned nowhere else.
//  * NotEquivalent: a probe pair whose finals have undefined heads that
//    differ in head or length, or where exactly one final head is undefined,
//    or where one side terminates and the other provably cycles. Equivalent
//    terms stay equivalent under dotting and reach finals with the same
//    undefined head and length, and agree on termination.
//
// Everything else is Unknown.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "contcalc/evaluator.hpp"
#include "contcalc/parser.hpp"
#include "contcalc/term.hpp"

namespace contcalc {

// ---------------------------------------------------------------------------
// Common reduct

enum class Answer { Yes, No, Unknown };

struct CommonReductVerdict {
  Answer answer = Answer::Unknown;
  std::optional<Term> witness;  // Yes: the meeting term
  std::string reason;           // Unknown: why the search stopped
};

/// Steps both sides alternately and stops at the first term reached by
/// both. No is only given when both sides end in distinct final terms.
inline CommonReductVerdict common_reduct(const Program& p, const Term& m, const Term& n,
                                         std::size_t budget = kDefaultBudget) {
  if (m == n) return {Answer::Yes, m, {}};
  enum class State { Running, Final, Cycle, Budget };
  struct Side {
    Term cur;
    std::unordered_set<Term, TermHash> seen;
    std::size_t steps = 0;
    State state = State::Running;
  };
  Side sides[2] = {{m, {m}}, {n, {n}}};
  while (sides[0].state == State::Running || sides[1].state == State::Running) {
    for (int s = 0; s < 2; ++s) {
      Side& self = sides[s];
      Side& other = sides[1 - s];
      if (self.state != State::Running) continue;
      auto succ = next(p, self.cur);
      if (!succ) {
        self.state = State::Final;
        continue;
      }
      if (self.steps == budget) {
        self.state = State::Budget;
        continue;
      }
      self.cur = std::move(*succ);
      ++self.steps;
      if (other.seen.contains(self.cur)) return {Answer::Yes, self.cur, {}};
      if (!self.seen.insert(self.cur).second) self.state = State::Cycle;
    }
  }
  if (sides[0].state == State::Final && sides[1].state == State::Final) return {Answer::No, {}, {}};
  std::string reason;
  const char* label[2] = {"left", "right"};
  for (int s = 0; s < 2; ++s) {
    if (sides[s].state == State::Budget) reason += std::string(reason.empty() ? "" : "; ") + label[s] + " side exceeded the budget";
    if (sides[s].state == State::Cycle) reason += std::string(reason.empty() ? "" : "; ") + label[s] + " side cycles";
  }
  return {Answer::Unknown, {}, reason};
}

// ---------------------------------------------------------------------------
// Observational equivalence

enum class Equivalence { Equivalent, NotEquivalent, Unknown };

inline std::string_view to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent: return "Equivalent";
    case Equivalence::NotEquivalent: return "NotEquivalent";
    case Equivalence::Unknown: return "Unknown";
  }
  return "?";
}

/// Which argument decided the verdict.
enum class Ground {
  None,
  CommonReduct,
  Structural,
  DifferentUndefinedFinals,
  UndefinedVersusDefined,
  TerminationMismatch,
};

inline std::string_view to_string(Ground g) {
  switch (g) {
    case Ground::None: return "none";
    case Ground::CommonReduct: return "common reduct";
    case Ground::Structural: return "same undefined head with equivalent arguments";
    case Ground::DifferentUndefinedFinals: return "final terms differ in undefined head or length";
    case Ground::UndefinedVersusDefined: return "only one final term has an undefined head";
    case Ground::TerminationMismatch: return "one side terminates, the other cycles";
  }
  return "?";
}

enum class Observable { Final, Cycle, Budget };

struct Observation {
  Observable kind;
  Term term;
  std::size_t steps;

  friend bool operator==(const Observation&, const Observation&) = default;
};

inline Observation observe(const ReductionOutcome& o) {
  if (const auto* f = std::get_if<Final>(&o)) return {Observable::Final, f->term, f->steps};
  if (const auto* c = std::get_if<CycleDetected>(&o)) return {Observable::Cycle, c->term, c->steps};
  const auto& b = std::get<BudgetExceeded>(o);
  return {Observable::Budget, b.term, b.steps};
}

struct EquivVerdict {
  Equivalence verdict = Equivalence::Unknown;
  Ground ground = Ground::None;
  std::size_t depth = 0;
  std::vector<Name> probes;  // fresh names appended to both sides
  std::optional<Observation> left, right;
  std::optional<Term> common;  // CommonReduct: the meeting term
};

inline constexpr std::size_t kMaxProbeDepth = 8;
inline constexpr int kMaxStructuralNesting = 64;

inline std::size_t default_probe_depth(const Program& p, const Term& m, const Term& n) {
  std::size_t k = std::max({arity_of_term(p, m).value_or(0), arity_of_term(p, n).value_or(0), std::size_t{2}});
  return std::min(k, kMaxProbeDepth);
}

namespace detail {

inline bool mentions_any(const Term& t, std::span<const Name> names) {
  for (const auto& n : names)
    if (mentions(t, n)) return true;
  return false;
}

/// The NotEquivalent grounds, decided from a pair of probe observations.
inline Ground separating_ground(const Program& p, const Observation& a, const Observation& b) {
  if (a.kind == Observable::Final && b.kind == Observable::Final) {
    bool def_a = p.defines(a.term.head());
    bool def_b = p.defines(b.term.head());
    if (!def_a && !def_b) {
      if (a.term.head() != b.term.head() || a.term.length() != b.term.length())
        return Ground::DifferentUndefinedFinals;
    } else if (def_a != def_b) {
      return Ground::UndefinedVersusDefined;
    }
    return Ground::None;
  }
  bool mixed = (a.kind == Observable::Final && b.kind == Observable::Cycle) ||
               (a.kind == Observable::Cycle && b.kind == Observable::Final);
  return mixed ? Ground::TerminationMismatch : Ground::None;
}

inline EquivVerdict obs_equiv_impl(const Program& p, const Term& m, const Term& n, std::size_t budget,
                                   std::size_t max_depth, int nesting) {
  auto km = arity_of_term(p, m);
  auto kn = arity_of_term(p, n);
  NameSet avoid = p.mentioned_names();
  collect_names(m, avoid);
  collect_names(n, avoid);
  FreshNames supply(std::move(avoid));
  std::vector<Name> probes;
  std::vector<Term> probe_terms;
  for (std::size_t i = 0; i < max_depth; ++i) {
    probes.push_back(supply.next());
    probe_terms.emplace_back(probes.back());
  }

  for (std::size_t j = 0; j <= max_depth; ++j) {
    std::span<const Term> args(probe_terms.data(), j);
    Term mj = m.dot(args);
    Term nj = n.dot(args);
    std::vector<Name> used(probes.begin(), probes.begin() + static_cast<std::ptrdiff_t>(j));
    bool arity_matches = km && kn && *km == j && *kn == j;

    if (arity_matches) {
      auto cr = common_reduct(p, mj, nj, budget);
      if (cr.answer == Answer::Yes) {
        EquivVerdict v{Equivalence::Equivalent, Ground::CommonReduct, j, used, std::nullopt, std::nullopt, std::nullopt};
        v.common = cr.witness;
        return v;
      }
    }

    Observation left = observe(reduce(p, mj, budget, true));
    Observation right = observe(reduce(p, nj, budget, true));
    Ground sep = separating_ground(p, left, right);
    if (sep != Ground::None) return EquivVerdict{Equivalence::NotEquivalent, sep, j, used, left, right, std::nullopt};

    if (arity_matches && nesting < kMaxStructuralNesting && left.kind == Observable::Final &&
        right.kind == Observable::Final && !p.defines(left.term.head()) &&
        left.term.head() == right.term.head() && left.term.length() == right.term.length()) {
      bool all = true;
      for (std::size_t i = 0; all && i < left.term.length(); ++i) {
        const Term& a = left.term.args()[i];
        const Term& b = right.term.args()[i];
        if (mentions_any(a, used) || mentions_any(b, used)) {
          all = false;
        } else if (!(a == b)) {
          auto sub = obs_equiv_impl(p, a, b, budget, default_probe_depth(p, a, b), nesting + 1);
          all = sub.verdict == Equivalence::Equivalent;
        }
      }
      if (all) return EquivVerdict{Equivalence::Equivalent, Ground::Structural, j, used, left, right, std::nullopt};
    }
  }
  return EquivVerdict{};
}

}  // namespace detail

/// Probes M and N with j = 0..max_probe_depth shared fresh names and decides
/// when a ground applies; the smallest deciding depth wins.
inline EquivVerdict obs_equiv(const Program& p, const Term& m, const Term& n,
                              std::size_t budget = kDefaultBudget,
                              std::optional<std::size_t> max_probe_depth = std::nullopt) {
  std::size_t depth = max_probe_depth ? *max_probe_depth : default_probe_depth(p, m, n);
  return detail::obs_equiv_impl(p, m, n, budget, depth, 0);
}

inline std::string format_observation(const Observation& o) {
  switch (o.kind) {
    case Observable::Final: return "final " + format_term(o.term);
    case Observable::Cycle: return "cycle at step " + std::to_string(o.steps) + " " + format_term(o.term);
    case Observable::Budget: return "budget exceeded after " + std::to_string(o.steps) + " steps";
  }
  return "?";
}

/// Verdict and witness, one `key: value` per line after the verdict line.
inline std::string format_verdict(const EquivVerdict& v) {
  std::string out(to_string(v.verdict));
  out += '\n';
  if (v.verdict == Equivalence::Unknown) return out;
  out += "depth: " + std::to_string(v.depth) + "\n";
  out += "probes:";
  for (const auto& n : v.probes) out += " " + n.text();
  out += "\n";
  if (v.common) out += "common: " + format_term(*v.common) + "\n";
  if (v.left) out += "left: " + format_observation(*v.left) + "\n";
  if (v.right) out += "right: " + format_observation(*v.right) + "\n";
  out += "ground: " + std::string(to_string(v.ground)) + "\n";
  return out;
}

/// Re-runs the probes of a NotEquivalent verdict through the evaluator and
/// checks that the recorded observables, and the difference between them,
/// are reproduced.
inline bool replay_witness(const Program& p, const Term& m, const Term& n, const EquivVerdict& v,
                           std::size_t budget = kDefaultBudget) {
  if (v.verdict != Equivalence::NotEquivalent || !v.left || !v.right) return false;
  std::vector<Term> args;
  for (const auto& name : v.probes) {
    if (mentions(m, name) || mentions(n, name) || p.mentions(name)) return false;
    args.emplace_back(name);
  }
  Observation left = observe(reduce(p, m.dot(args), budget, true));
  Observation right = observe(reduce(p, n.dot(args), budget, true));
  return left == *v.left && right == *v.right && detail::separating_ground(p, left, right) == v.ground;
}

// ---------------------------------------------------------------------------
// Program combination

enum class MergeMode { Strict, Hygienic };

struct MergeReport {
  Program merged;
  std::map<Name, Name> renaming;  // hygienic mode: renamed names of the second program
};

/// Strict: union where identical rules collapse and differing ones are an
/// error. Hygienic: names both programs define differently are renamed in
/// the second program to fresh names before the union.
inline Checked<MergeReport> merge_programs(const Program& a, const Program& b, MergeMode mode) {
  std::map<Name, Name> renaming;
  Program second = b;
  if (mode == MergeMode::Hygienic) {
    FreshNames supply(a.mentioned_names());
    supply.avoid(b.mentioned_names());
    for (const auto& rule : b.rules()) {
      const Rule* mine = a.find(rule.head);
      if (mine && !(*mine == rule)) renaming.emplace(rule.head, supply.next());
    }
    second = fresh_substitution(b, renaming);
  }

  Diagnostics diags;
  std::vector<Rule> rules = a.rules();
  for (const auto& rule : second.rules()) {
    const Rule* mine = a.find(rule.head);
    if (!mine) {
      rules.push_back(rule);
    } else if (!(*mine == rule)) {
      diags.push_back({rule.pos, DiagnosticKind::Validation, DiagnosticCode::ConflictingDefinition,
                       "conflicting definitions of '" + rule.head.text() + "': '" + format_rule(*mine) +
                           "' and '" + format_rule(rule) + "'"});
    }
  }
  if (!diags.empty()) return unexpected(std::move(diags));
  auto merged = validate_program(std::move(rules));
  if (!merged) return unexpected(merged.error());
  return MergeReport{std::move(merged).value(), std::move(renaming)};
}

}  // namespace contcalc
