#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contcalc/cli.hpp"

namespace {

void add_program_options(CLI::App* cmd, contcalc::cli::Invocation& inv) {
  cmd->add_flag("--stdlib", inv.use_stdlib, "Prepend the built-in program");
  cmd->add_option("-p,--program", inv.program_files, "Program file (repeatable)")
      ->check(CLI::ExistingFile)
      ->allow_extra_args(false);
  cmd->add_option("--budget", inv.budget, "Maximum number of reduction steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace contcalc::cli;

  CLI::App app{"contcalc: evaluate and compare continuation calculus terms"};
  app.require_subcommand(1);

  Invocation inv;
  std::string term, other, type;
  std::vector<std::string> files;
  bool no_cycles = false;

  auto* check = app.add_subcommand("check", "Parse and validate program files and their merge");
  check->add_option("files", files, "Program files")->check(CLI::ExistingFile);
  check->add_flag("--stdlib", inv.use_stdlib, "Also merge with the built-in program");

  auto* run = app.add_subcommand("run", "Reduce a term to its final form");
  add_program_options(run, inv);
  run->add_flag("--no-cycle-check", no_cycles, "Do not remember visited terms");
  run->add_option("term", term, "Term to reduce")->required();

  auto* tr = app.add_subcommand("trace", "Print every reduction step");
  add_program_options(tr, inv);
  tr->add_flag("--no-cycle-check", no_cycles, "Do not remember visited terms");
  tr->add_option("term", term, "Term to reduce")->required();

  auto* eq = app.add_subcommand("eq", "Check observational equivalence of two terms");
  add_program_options(eq, inv);
  eq->add_option("--probes", inv.probes, "Maximum number of fresh probe arguments");
  eq->add_option("left", term, "First term")->required();
  eq->add_option("right", other, "Second term")->required();

  auto* decode = app.add_subcommand("decode", "Decode a data term");
  add_program_options(decode, inv);
  decode->add_option("--type", type, "Value type")->required()->check(CLI::IsMember({"nat", "bool", "natlist"}));
  decode->add_option("term", term, "Term to decode")->required();

  auto* bench = app.add_subcommand("bench", "Reproduce the fib(7) step-count table");
  auto* stdlib = app.add_subcommand("stdlib", "Print the built-in program");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }
  inv.detect_cycles = !no_cycles;

  auto& out = std::cout;
  auto& err = std::cerr;
  if (check->parsed()) return check_cmd(files, inv.use_stdlib, out, err);
  if (run->parsed()) return run_cmd(inv, term, out, err);
  if (tr->parsed()) return trace_cmd(inv, term, out, err);
  if (eq->parsed()) return eq_cmd(inv, term, other, out, err);
  if (decode->parsed()) return decode_cmd(inv, type, term, out, err);
  if (bench->parsed()) return bench_cmd(out);
  if (stdlib->parsed()) return stdlib_cmd(out);
  return kError;
}
