#include <gtest/gtest.h>

#include "support.hpp"

using namespace contcalc;
using contcalc::testing::Gen;
using contcalc::testing::must_parse;
using contcalc::testing::must_term;

TEST(ParseProgram, Examples) {
  auto a = parse_program("Zero.z.s -> z\nS.m.z.s -> s.m");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->size(), 2u);
  auto b = parse_program("Goto.x -> x ; Omega.x -> x.x");
  ASSERT_TRUE(b);
  EXPECT_EQ(b->size(), 2u);
  EXPECT_EQ(b->arity(Name("Omega")), 1u);
}

TEST(ParseProgram, RepeatedParameterPointsAtSecondOccurrence) {
  auto r = parse_program("A.x.x -> x");
  ASSERT_FALSE(r);
  ASSERT_EQ(r.error().size(), 1u);
  EXPECT_EQ(r.error()[0].code, DiagnosticCode::RepeatedParameter);
  EXPECT_EQ(r.error()[0].kind, DiagnosticKind::Validation);
  EXPECT_EQ(r.error()[0].pos.line, 1);
  EXPECT_EQ(r.error()[0].pos.column, 5);
}

TEST(ParseProgram, CommentsAndBlankLines) {
  auto r = parse_program("# header\n\nA -> B   # trailing\n\n; B -> C\n");
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, must_parse("A -> B; B -> C"));
}

TEST(ParseProgram, ReportsSeveralErrors) {
  auto r = parse_program("A -> \nB.x -> x\nC -> D)\n");
  ASSERT_FALSE(r);
  EXPECT_GE(r.error().size(), 2u);
  for (const auto& d : r.error()) EXPECT_GT(d.pos.line, 0);
}

TEST(ParseProgram, LexErrors) {
  auto r = parse_program("A -> B$");
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error()[0].kind, DiagnosticKind::Lex);
  auto reserved = parse_program("_F0 -> B");
  ASSERT_FALSE(reserved);
  EXPECT_TRUE(has_code(reserved.error(), DiagnosticCode::ReservedName));
}

TEST(ParseProgram, LiteralsInRules) {
  Program p = must_parse("Three -> 3\nL -> [1,0]");
  Rhs three = p.find(Name("Three"))->rhs;
  EXPECT_EQ(format_rhs(three), "S.(S.(S.Zero))");
  EXPECT_EQ(format_rhs(p.find(Name("L"))->rhs), "Cons.(S.Zero).(Cons.Zero.Nil)");
}

TEST(ParseTerm, Examples) {
  EXPECT_EQ(must_term("S.(S.(S.Zero))"), encode_nat(3));
  std::vector<NatValue> l{3, 1, 2};
  EXPECT_EQ(must_term("ListMult.[3,1,2].R"), Term(Name("ListMult"), {encode_natlist(l), Term::atom("R")}));
  EXPECT_EQ(must_term("7"), encode_nat(7));
  EXPECT_EQ(must_term("[]"), Term::atom("Nil"));
}

TEST(ParseTerm, VariableRejected) {
  auto r = parse_term("Goto.x");
  ASSERT_FALSE(r);
  ASSERT_EQ(r.error().size(), 1u);
  EXPECT_EQ(r.error()[0].code, DiagnosticCode::VariableInTerm);
  EXPECT_EQ(r.error()[0].pos.column, 6);
}

TEST(ParseTerm, Limits) {
  auto big = parse_term("10001");
  ASSERT_FALSE(big);
  EXPECT_TRUE(has_code(big.error(), DiagnosticCode::LiteralTooLarge));
  std::string deep = "A." + std::string(2000, '(') + "B" + std::string(2000, ')');
  auto nested = parse_term(deep);
  ASSERT_FALSE(nested);
  EXPECT_TRUE(has_code(nested.error(), DiagnosticCode::NestingTooDeep));
}

TEST(ParseTerm, TrailingGarbage) {
  EXPECT_FALSE(parse_term("A B"));
  EXPECT_FALSE(parse_term(""));
  EXPECT_FALSE(parse_term("A."));
}

TEST(Format, Examples) {
  EXPECT_EQ(format_term(encode_nat(2)), "S.(S.Zero)");
  EXPECT_EQ(format_term(must_term("AddCBV.Zero.Zero.R")), "AddCBV.Zero.Zero.R");
  EXPECT_EQ(format_term(must_term("R.(S.Zero)")), "R.(S.Zero)");
  EXPECT_EQ(format_term(must_term("((A.B)).C")), "A.B.C");
}

TEST(RoundTrip, RandomTerms) {
  Gen g(21);
  for (int i = 0; i < 2000; ++i) {
    Term t = g.term(4);
    auto back = parse_term(format_term(t));
    ASSERT_TRUE(back) << format_term(t);
    EXPECT_EQ(*back, t);
  }
}

TEST(RoundTrip, RandomPrograms) {
  Gen g(22);
  for (int i = 0; i < 500; ++i) {
    Program p = g.program();
    auto back = parse_program(format_program(p));
    ASSERT_TRUE(back) << format_program(p);
    EXPECT_EQ(*back, p);
  }
}

TEST(RoundTrip, StdlibDump) {
  std::string dump = format_program(stdlib_program());
  auto back = parse_program(dump);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, stdlib_program());
  EXPECT_EQ(format_program(*back), dump);
}

TEST(RoundTrip, DiagnosticFormat) {
  auto r = parse_term("Goto.x");
  ASSERT_FALSE(r);
  EXPECT_EQ(format_diagnostic(r.error()[0], "t"), "t:1:6: parse error [VariableInTerm]: " + r.error()[0].message);
}
