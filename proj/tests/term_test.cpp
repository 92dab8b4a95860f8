#include <gtest/gtest.h>

#include "support.hpp"

using namespace contcalc;
using contcalc::testing::Gen;
using contcalc::testing::must_parse;
using contcalc::testing::must_term;

TEST(Term, HeadAndLength) {
  EXPECT_EQ(head(must_term("Zero")), Name("Zero"));
  EXPECT_EQ(head(must_term("S.(S.Zero)")), Name("S"));
  EXPECT_EQ(head(must_term("AddCBV.Zero.Zero.R")), Name("AddCBV"));
  EXPECT_EQ(length(must_term("S.(S.Zero)")), 1u);
  EXPECT_EQ(length(must_term("AddCBV.Zero.Zero.R")), 3u);
  EXPECT_EQ(length(must_term("Zero")), 0u);
}

TEST(Term, DotExtendsSpine) {
  Gen g(11);
  for (int i = 0; i < 500; ++i) {
    Term m = g.term(), n = g.term();
    Term mn = m.dot(n);
    EXPECT_EQ(head(mn), head(m));
    EXPECT_EQ(length(mn), length(m) + 1);
    EXPECT_EQ(mn.args().back(), n);
  }
}

TEST(Term, EqualityIsStructural) {
  EXPECT_EQ(must_term("A.(B.C)"), must_term("A.(B.C)"));
  EXPECT_NE(must_term("A.B.C"), must_term("A.(B.C)"));
  EXPECT_NE(must_term("A.B"), must_term("B.A"));
}

TEST(Term, DeepTermsDoNotOverflow) {
  Term t = Term::atom("Zero");
  for (int i = 0; i < 200000; ++i) t = Term(Name("S"), {t});
  Term u = t;
  EXPECT_EQ(t, u);
  EXPECT_EQ(t.node_count(), 200001u);
}

TEST(Arity, OfName) {
  const Program& p = stdlib_program();
  EXPECT_EQ(arity_of_name(p, Name("Zero")), 2u);
  EXPECT_EQ(arity_of_name(p, Name("Cons")), 4u);
  EXPECT_EQ(arity_of_name(p, Name("UnknownName")), std::nullopt);
}

TEST(Arity, OfTerm) {
  const Program& p = stdlib_program();
  EXPECT_EQ(arity_of_term(p, must_term("S.(S.Zero)")), 2u);
  EXPECT_EQ(arity_of_term(p, must_term("Zero.A.B")), 0u);
  EXPECT_EQ(arity_of_term(p, must_term("Zero.A.B.C")), std::nullopt);
  EXPECT_EQ(arity_of_term(p, must_term("R.Zero")), std::nullopt);
}

TEST(Instantiate, Examples) {
  Program p = must_parse("Goto.x -> x\nOmega.x -> x.x\nK.s.x -> s.x");
  Term omega = Term::atom("Omega");
  EXPECT_EQ(instantiate(p.find(Name("Goto"))->rhs, {{Var{"x"}, omega}}), omega);
  EXPECT_EQ(instantiate(p.find(Name("Omega"))->rhs, {{Var{"x"}, omega}}), must_term("Omega.Omega"));
  EXPECT_EQ(instantiate(p.find(Name("K"))->rhs, {{Var{"s"}, Term::atom("R")}, {Var{"x"}, must_term("S.Zero")}}),
            must_term("R.(S.Zero)"));
}

TEST(Instantiate, UnboundVariableThrows) {
  Rhs r{Var{"y"}, {}, {}};
  EXPECT_THROW(instantiate(r, {{Var{"x"}, Term::atom("A")}}), UnboundVariableError);
}

TEST(Instantiate, HeadVariableSplices) {
  Gen g(12);
  for (int i = 0; i < 500; ++i) {
    Term m = g.term();
    std::vector<Term> extra{g.term(), g.term()};
    Rhs r{Var{"v"}, {to_rhs(extra[0]), to_rhs(extra[1])}, {}};
    EXPECT_EQ(instantiate(r, {{Var{"v"}, m}}), m.dot(extra));
  }
}

TEST(SubstituteName, Examples) {
  EXPECT_EQ(substitute_name(must_term("R.Zero"), Name("R"), must_term("S.Zero")), must_term("S.Zero.Zero"));
  EXPECT_EQ(substitute_name(must_term("Zero"), Name("R"), must_term("X")), must_term("Zero"));
  EXPECT_EQ(substitute_name(must_term("Goto.R"), Name("R"), must_term("Omega")), must_term("Goto.Omega"));
}

TEST(SubstituteName, SelfIsIdentity) {
  Gen g(13);
  for (int i = 0; i < 500; ++i) {
    Term t = g.term();
    Name n = g.name();
    EXPECT_EQ(substitute_name(t, n, Term(n)), t);
  }
}

TEST(FreshSubstitution, Examples) {
  Program ab = must_parse("A -> B; B -> C");
  EXPECT_EQ(fresh_substitution(ab, {{Name("A"), Name("A1")}, {Name("B"), Name("B1")}}),
            must_parse("A1 -> B1; B1 -> C"));
  EXPECT_EQ(fresh_substitution(stdlib_program(), {}), stdlib_program());
  EXPECT_EQ(fresh_substitution(must_parse("Goto.x -> x"), {{Name("Goto"), Name("Jump")}}),
            must_parse("Jump.x -> x"));
}

TEST(FreshSubstitution, RejectsNonFresh) {
  Program ab = must_parse("A -> B; B -> C");
  EXPECT_THROW(fresh_substitution(ab, {{Name("A"), Name("C")}}), NotFreshError);
  EXPECT_THROW(fresh_substitution(ab, {{Name("A"), Name("X")}, {Name("B"), Name("X")}}), NotFreshError);
}

TEST(FreshName, Examples) {
  NameSet avoid = stdlib_program().mentioned_names();
  EXPECT_EQ(fresh_name(avoid), Name("_F0"));
  avoid.insert(Name("_F0"));
  EXPECT_EQ(fresh_name(avoid), Name("_F1"));
  FreshNames supply(avoid);
  Name a = supply.next(), b = supply.next();
  EXPECT_NE(a, b);
  EXPECT_TRUE(a.reserved());
}

TEST(Validate, AcceptsDataRules) {
  EXPECT_TRUE(parse_program("Zero.z.s -> z\nS.m.z.s -> s.m"));
}

TEST(Validate, UnboundVariables) {
  auto r = parse_program("B.u -> AddCBV.u.(S.y).r");
  ASSERT_FALSE(r);
  ASSERT_EQ(r.error().size(), 2u);
  EXPECT_EQ(r.error()[0].code, DiagnosticCode::UnboundVariable);
  EXPECT_NE(r.error()[0].message.find("'y'"), std::string::npos);
  EXPECT_NE(r.error()[1].message.find("'r'"), std::string::npos);
}

TEST(Validate, RepeatedParameter) {
  auto r = parse_program("A.x.x -> x");
  ASSERT_FALSE(r);
  EXPECT_TRUE(has_code(r.error(), DiagnosticCode::RepeatedParameter));
}

TEST(Validate, DuplicateDefinition) {
  auto r = parse_program("A -> B\nA -> C");
  ASSERT_FALSE(r);
  EXPECT_TRUE(has_code(r.error(), DiagnosticCode::DuplicateDefinition));
  EXPECT_EQ(r.error()[0].pos.line, 2);
}

TEST(Program, EqualityIgnoresOrder) {
  EXPECT_EQ(must_parse("A -> B; B -> C"), must_parse("B -> C; A -> B"));
  EXPECT_NE(must_parse("A -> B"), must_parse("A -> C"));
}
