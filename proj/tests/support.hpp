#pragma once

// Seeded generators of random names, terms and programs for property tests.

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "contcalc/contcalc.hpp"

namespace contcalc::testing {

inline const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> pool{"A", "B", "C", "D", "E", "F", "G", "H'", "K1", "Zz"};
  return pool;
}

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  Name name() { return Name(name_pool()[below(name_pool().size())]); }

  Term term(int depth = 3, std::size_t max_args = 3) { return term_with({}, depth, max_args); }

  /// Like term(), but also draws from `extra` (one time in four).
  Term term_with(const std::vector<Name>& extra, int depth = 3, std::size_t max_args = 3) {
    std::vector<Term> args;
    if (depth > 0) {
      std::size_t k = below(max_args + 1);
      for (std::size_t i = 0; i < k; ++i) args.push_back(term_with(extra, depth - 1, max_args));
    }
    Name head = !extra.empty() && chance(0.25) ? extra[below(extra.size())] : name();
    return Term(std::move(head), std::move(args));
  }

  Rhs rhs(const std::vector<Var>& params, int depth) {
    Rhs r;
    if (!params.empty() && chance(0.5))
      r.head = params[below(params.size())];
    else
      r.head = name();
    if (depth > 0) {
      std::size_t k = below(4);
      for (std::size_t i = 0; i < k; ++i) r.args.push_back(rhs(params, depth - 1));
    }
    return r;
  }

  /// A valid program over a subset of the name pool.
  Program program(double define_prob = 0.6) {
    static const char* var_names[] = {"x", "y", "z", "w"};
    std::vector<Rule> rules;
    for (const auto& text : name_pool()) {
      if (!chance(define_prob)) continue;
      Rule r;
      r.head = Name(text);
      std::size_t arity = below(4);
      for (std::size_t i = 0; i < arity; ++i) r.params.push_back(Var{var_names[i]});
      r.rhs = rhs(r.params, 2);
      rules.push_back(std::move(r));
    }
    return std::move(validate_program(std::move(rules))).value();
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

inline Program must_parse(std::string_view text) {
  auto p = parse_program(text);
  if (!p) throw std::runtime_error("test program does not parse: " + std::string(text));
  return std::move(p).value();
}

inline Term must_term(std::string_view text) {
  auto t = parse_term(text);
  if (!t) throw std::runtime_error("test term does not parse: " + std::string(text));
  return std::move(t).value();
}

inline std::uint64_t fib(unsigned n) {
  std::uint64_t a = 0, b = 1;
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

}  // namespace contcalc::testing

namespace contcalc {
inline void PrintTo(const Term& t, std::ostream* os) { *os << format_term(t); }
inline void PrintTo(const Name& n, std::ostream* os) { *os << n.text(); }
}  // namespace contcalc
