#pragma once

// Standard data representations and the function definitions built on them.
//
// A value is represented by a term that branches into one continuation per
// constructor: Zero.z.s -> z, S.x.z.s -> s.x, and so on. Decoders observe a
// term by dotting it with fresh (undefined) names and looking at the final
// term, so they never need to extend the program.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "contcalc/evaluator.hpp"
#include "contcalc/parser.hpp"
#include "contcalc/term.hpp"

namespace contcalc {

inline constexpr std::string_view kStdlibSource = R"(# Booleans, naturals and lists of naturals
True.t.f -> t
False.t.f -> f
Zero.z.s -> z
S.x.z.s -> s.x
Nil.e.c -> e
Cons.x.xs.e.c -> c.x.xs

# Call-by-value addition and Fibonacci
AddCBV.x.y.r -> x.(r.y).(AddCBV'.y.r)
AddCBV'.y.r.x' -> AddCBV.x'.(S.y).r
FibCBV.x.r -> x.(r.Zero).(FibCBV1.r)
FibCBV1.r.y -> y.(r.(S.Zero)).(FibCBV2.r.y)
FibCBV2.r.y.y' -> FibCBV.y.(FibCBV3.r.y')
FibCBV3.r.y'.fib_y -> FibCBV.y'.(FibCBV4.r.fib_y)
FibCBV4.r.fib_y.fib_y' -> AddCBV.fib_y.fib_y'.r

# Call-by-name addition and Fibonacci
AddCBN.x.y.z.s -> x.(y.z.s).(AddCBN'.y.s)
AddCBN'.y.s.x' -> s.(AddCBN.x'.y)
FibCBN.x.z.s -> x.z.(FibCBN1.z.s)
FibCBN1.z.s.y -> y.(s.Zero).(FibCBN2.z.s.y)
FibCBN2.z.s.y.y' -> AddCBN.(FibCBN.y).(FibCBN.y').z.s

# Less-than-or-equal
Leq.x.y.t.f -> x.t.(Leq'.y.t.f)
Leq'.y.t.f.x' -> Leq.y.x'.f.t

# List product with an early exit on zero
ListMult.xs.r -> A.xs.r.(r.Zero)
A.xs.r.abort -> xs.(r.(S.Zero)).(B.r.abort)
B.r.abort.x.xs -> x.abort.(C.r.abort.x.xs)
C.r.abort.x.xs.x' -> A.xs.(PostMult.x.r).abort
PostMult.x.r.y -> Mult.x.y.r
Mult.x.y.r -> y.(r.Zero).(PostMult.x.(PostAdd.x.r))
PostAdd.x.r.y -> AddCBV.x.y.r
)";

/// The built-in program, parsed once.
inline const Program& stdlib_program() {
  static const Program program = [] {
    auto parsed = parse_program(kStdlibSource);
    if (!parsed) throw std::logic_error("built-in program does not parse");
    return std::move(parsed).value();
  }();
  return program;
}

// ---------------------------------------------------------------------------
// Values

using NatValue = std::uint64_t;

struct Bool {
  bool value;
  friend bool operator==(const Bool&, const Bool&) = default;
};
struct Nat {
  NatValue value;
  friend bool operator==(const Nat&, const Nat&) = default;
};
struct NatList {
  std::vector<NatValue> values;
  friend bool operator==(const NatList&, const NatList&) = default;
};

using StdValue = std::variant<Bool, Nat, NatList>;

inline Term encode_bool(bool b) { return Term::atom(b ? "True" : "False"); }

inline Term encode_nat(NatValue n) {
  Term t = Term::atom("Zero");
  const Name succ("S");
  for (NatValue i = 0; i < n; ++i) t = Term(succ, {std::move(t)});
  return t;
}

inline Term encode_natlist(std::span<const NatValue> values) {
  Term t = Term::atom("Nil");
  const Name cons("Cons");
  for (auto it = values.rbegin(); it != values.rend(); ++it) t = Term(cons, {encode_nat(*it), std::move(t)});
  return t;
}

inline Term encode(const StdValue& v) {
  struct {
    Term operator()(const Bool& b) const { return encode_bool(b.value); }
    Term operator()(const Nat& n) const { return encode_nat(n.value); }
    Term operator()(const NatList& l) const { return encode_natlist(l.values); }
  } visitor;
  return std::visit(visitor, v);
}

inline std::string format_value(const StdValue& v) {
  if (const auto* b = std::get_if<Bool>(&v)) return b->value ? "true" : "false";
  if (const auto* n = std::get_if<Nat>(&v)) return std::to_string(n->value);
  std::string out = "[";
  const auto& l = std::get<NatList>(v).values;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(l[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Decoding

struct DecodeError {
  enum class Kind { NotAValue, Budget, Cycle };
  Kind kind;
  std::optional<Term> term;  // the offending final term for NotAValue
  std::size_t position = 0;  // how many constructors were decoded before the failure
};

inline std::string format_decode_error(const DecodeError& e) {
  switch (e.kind) {
    case DecodeError::Kind::NotAValue:
      return "NotAValue at position " + std::to_string(e.position) + ": final term " +
             (e.term ? format_term(*e.term) : std::string("?"));
    case DecodeError::Kind::Budget: return "Budget: step budget exhausted";
    case DecodeError::Kind::Cycle: return "Cycle: the probe does not terminate";
  }
  return "?";
}

template <class T>
using Decoded = Expected<T, DecodeError>;

namespace detail {

/// Budget shared across all probes of one decode.
class ProbeRunner {
 public:
  ProbeRunner(const Program& p, std::size_t budget) : p_(p), remaining_(budget) {}

  Expected<Term, DecodeError> run(const Term& t) {
    auto outcome = reduce(p_, t, remaining_, true);
    remaining_ -= outcome_steps(outcome);
    if (const auto* f = std::get_if<Final>(&outcome)) return f->term;
    if (std::holds_alternative<BudgetExceeded>(outcome)) return unexpected(DecodeError{DecodeError::Kind::Budget, std::nullopt, 0});
    return unexpected(DecodeError{DecodeError::Kind::Cycle, std::nullopt, 0});
  }

  const Program& program() const { return p_; }

 private:
  const Program& p_;
  std::size_t remaining_;
};

inline std::pair<Term, Term> probe_pair(const Program& p, const Term& t) {
  NameSet avoid = p.mentioned_names();
  collect_names(t, avoid);
  FreshNames supply(std::move(avoid));
  return {Term(supply.next()), Term(supply.next())};
}

inline bool is_bare(const Term& t, const Term& name) { return t.length() == 0 && t.head() == name.head(); }

inline Decoded<NatValue> decode_nat_with(ProbeRunner& runner, Term t) {
  auto [z, s] = probe_pair(runner.program(), t);
  NatValue count = 0;
  for (;;) {
    Term probe = t.dot(z).dot(s);
    auto final_term = runner.run(probe);
    if (!final_term) {
      auto err = final_term.error();
      err.position = count;
      return unexpected(err);
    }
    const Term& f = *final_term;
    if (is_bare(f, z)) return count;
    if (f.head() == s.head() && f.length() == 1) {
      ++count;
      t = f.args()[0];
      continue;
    }
    return unexpected(DecodeError{DecodeError::Kind::NotAValue, f, count});
  }
}

}  // namespace detail

inline Decoded<NatValue> decode_nat(const Program& p, const Term& t, std::size_t budget = kDefaultBudget) {
  detail::ProbeRunner runner(p, budget);
  return detail::decode_nat_with(runner, t);
}

inline Decoded<bool> decode_bool(const Program& p, const Term& t, std::size_t budget = kDefaultBudget) {
  detail::ProbeRunner runner(p, budget);
  auto [yes, no] = detail::probe_pair(p, t);
  auto final_term = runner.run(t.dot(yes).dot(no));
  if (!final_term) return unexpected(final_term.error());
  if (detail::is_bare(*final_term, yes)) return true;
  if (detail::is_bare(*final_term, no)) return false;
  return unexpected(DecodeError{DecodeError::Kind::NotAValue, *final_term, 0});
}

inline Decoded<std::vector<NatValue>> decode_natlist(const Program& p, const Term& t,
                                                     std::size_t budget = kDefaultBudget) {
  detail::ProbeRunner runner(p, budget);
  auto [e, c] = detail::probe_pair(p, t);
  std::vector<NatValue> out;
  Term cur = t;
  for (;;) {
    auto final_term = runner.run(cur.dot(e).dot(c));
    if (!final_term) {
      auto err = final_term.error();
      err.position = out.size();
      return unexpected(err);
    }
    const Term& f = *final_term;
    if (detail::is_bare(f, e)) return out;
    if (f.head() != c.head() || f.length() != 2)
      return unexpected(DecodeError{DecodeError::Kind::NotAValue, f, out.size()});
    auto elem = detail::decode_nat_with(runner, f.args()[0]);
    if (!elem) {
      auto err = elem.error();
      err.position = out.size();
      return unexpected(err);
    }
    out.push_back(*elem);
    cur = f.args()[1];
  }
}

}  // namespace contcalc
