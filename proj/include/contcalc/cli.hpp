#pragma once

// Command implementations behind the `contcalc` executable. Each command
// writes its result to `out`, problems to `err`, and returns the exit code:
//   0 success / decided, 1 parse, validation or usage error,
//   2 budget exhausted or undecided, 3 negative result (cycle, not a value).

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "contcalc/equivalence.hpp"
#include "contcalc/evaluator.hpp"
#include "contcalc/parser.hpp"
#include "contcalc/stdlib.hpp"

namespace contcalc::cli {

enum ExitCode : int { kOk = 0, kError = 1, kUndecided = 2, kNegative = 3 };

struct Invocation {
  std::vector<std::string> program_files;
  bool use_stdlib = false;
  std::size_t budget = kDefaultBudget;
  std::optional<std::size_t> probes;
  bool detect_cycles = true;
};

inline void print_diagnostics(std::ostream& err, const Diagnostics& ds, std::string_view origin) {
  for (const auto& d : ds) err << format_diagnostic(d, origin) << '\n';
}

inline std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": error: cannot open file\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Parses every file and strict-merges them in order, after the built-in
/// program when requested. Diagnostics go to `err`.
inline std::optional<Program> load_program(const std::vector<std::string>& files, bool use_stdlib,
                                            std::ostream& err) {
  Program merged = use_stdlib ? stdlib_program() : Program{};
  bool ok = true;
  for (const auto& path : files) {
    auto text = read_file(path, err);
    if (!text) {
      ok = false;
      continue;
    }
    auto parsed = parse_program(*text);
    if (!parsed) {
      print_diagnostics(err, parsed.error(), path);
      ok = false;
      continue;
    }
    auto combined = merge_programs(merged, *parsed, MergeMode::Strict);
    if (!combined) {
      print_diagnostics(err, combined.error(), path);
      ok = false;
      continue;
    }
    merged = std::move(combined->merged);
  }
  if (!ok) return std::nullopt;
  return merged;
}

inline std::optional<Program> load_program(const Invocation& inv, std::ostream& err) {
  if (inv.program_files.empty() && !inv.use_stdlib) {
    err << "error: no program given (use --stdlib and/or -p FILE)\n";
    return std::nullopt;
  }
  return load_program(inv.program_files, inv.use_stdlib, err);
}

inline std::optional<Term> parse_term_arg(const std::string& text, std::ostream& err) {
  auto t = parse_term(text);
  if (!t) {
    print_diagnostics(err, t.error(), "<term>");
    return std::nullopt;
  }
  return std::move(t).value();
}

inline int exit_code_for(const ReductionOutcome& o) {
  if (is_final(o)) return kOk;
  return std::holds_alternative<BudgetExceeded>(o) ? kUndecided : kNegative;
}

inline int check_cmd(const std::vector<std::string>& files, bool use_stdlib, std::ostream& out,
                     std::ostream& err) {
  if (files.empty() && !use_stdlib) {
    err << "error: nothing to check\n";
    return kError;
  }
  auto program = load_program(files, use_stdlib, err);
  if (!program) return kError;
  out << "ok: " << program->size() << " rules\n";
  return kOk;
}

inline int run_cmd(const Invocation& inv, const std::string& term_text, std::ostream& out, std::ostream& err) {
  auto p = load_program(inv, err);
  if (!p) return kError;
  auto t = parse_term_arg(term_text, err);
  if (!t) return kError;
  auto outcome = reduce(*p, *t, inv.budget, inv.detect_cycles);
  const Term& last = outcome_term(outcome);
  out << format_term(last) << "  -- ";
  if (const auto* f = std::get_if<Final>(&outcome)) {
    out << to_string(classify(*p, f->term).category) << ", " << f->steps << " steps\n";
  } else if (const auto* b = std::get_if<BudgetExceeded>(&outcome)) {
    out << "budget exceeded, " << b->steps << " steps\n";
  } else {
    out << "cycle detected at step " << std::get<CycleDetected>(outcome).steps << '\n';
  }
  return exit_code_for(outcome);
}

inline int trace_cmd(const Invocation& inv, const std::string& term_text, std::ostream& out,
                     std::ostream& err) {
  auto p = load_program(inv, err);
  if (!p) return kError;
  auto t = parse_term_arg(term_text, err);
  if (!t) return kError;
  auto tr = trace(*p, *t, inv.budget, inv.detect_cycles);
  out << format_trace(*p, tr);
  return exit_code_for(tr.outcome);
}

inline int eq_cmd(const Invocation& inv, const std::string& a_text, const std::string& b_text,
                  std::ostream& out, std::ostream& err) {
  auto p = load_program(inv, err);
  if (!p) return kError;
  auto a = parse_term_arg(a_text, err);
  auto b = parse_term_arg(b_text, err);
  if (!a || !b) return kError;
  auto verdict = obs_equiv(*p, *a, *b, inv.budget, inv.probes);
  out << format_verdict(verdict);
  return verdict.verdict == Equivalence::Unknown ? kUndecided : kOk;
}

inline int decode_cmd(const Invocation& inv, const std::string& type, const std::string& term_text,
                      std::ostream& out, std::ostream& err) {
  if (type != "nat" && type != "bool" && type != "natlist") {
    err << "error: --type must be nat, bool or natlist\n";
    return kError;
  }
  auto p = load_program(inv, err);
  if (!p) return kError;
  auto t = parse_term_arg(term_text, err);
  if (!t) return kError;

  auto report = [&](const auto& decoded, auto wrap) {
    if (decoded) {
      out << format_value(wrap(*decoded)) << '\n';
      return int{kOk};
    }
    out << format_decode_error(decoded.error()) << '\n';
    return decoded.error().kind == DecodeError::Kind::NotAValue ? int{kNegative} : int{kUndecided};
  };
  if (type == "nat") return report(decode_nat(*p, *t, inv.budget), [](NatValue v) { return StdValue{Nat{v}}; });
  if (type == "bool") return report(decode_bool(*p, *t, inv.budget), [](bool v) { return StdValue{Bool{v}}; });
  return report(decode_natlist(*p, *t, inv.budget),
                [](const std::vector<NatValue>& v) { return StdValue{NatList{v}}; });
}

struct BenchRow {
  const char* expression;
  std::size_t steps;
  const char* final_term;
};

/// The call-by-value / call-by-name comparison table for fib(7) and +.
inline constexpr BenchRow kBenchRows[] = {
    {"FibCBV.7.R", 362, "R.13"},
    {"AddCBV.13.0.R", 41, "R.13"},
    {"AddCBV.(FibCBN.7).0.R", 304, "R.13"},
    {"AddCBV.0.13.R", 2, "R.13"},
    {"AddCBV.0.(FibCBN.7).R", 2, "R.(FibCBN.7)"},
};

inline int bench_cmd(std::ostream& out) {
  const Program& p = stdlib_program();
  std::vector<std::string> mismatches;
  out << "expression | steps | final\n";
  for (const auto& row : kBenchRows) {
    Term t = std::move(parse_term(row.expression)).value();
    Term expected = std::move(parse_term(row.final_term)).value();
    auto outcome = reduce(p, t);
    out << row.expression << " | " << outcome_steps(outcome) << " | " << format_term(outcome_term(outcome)) << '\n';
    if (!is_final(outcome) || outcome_steps(outcome) != row.steps || !(outcome_term(outcome) == expected))
      mismatches.push_back(std::string(row.expression) + ": expected " + std::to_string(row.steps) +
                           " steps, final " + format_term(expected));
  }
  for (const auto& m : mismatches) out << "mismatch: " << m << '\n';
  return mismatches.empty() ? kOk : kNegative;
}

inline int stdlib_cmd(std::ostream& out) {
  out << format_program(stdlib_program());
  return kOk;
}

}  // namespace contcalc::cli
