#pragma once

// Text syntax for programs and terms.
//
//   program := (rule? (NEWLINE | ';'))*
//   rule    := Name ('.' var)* '->' expr
//   expr    := atom ('.' atom)*            left-associative
//   atom    := Name | var | nat | '[' (nat (',' nat)*)? ']' | '(' expr ')'
//
// `#` starts a comment that runs to the end of the line. Newlines inside
// parentheses or brackets are ignored. `7` means S.(S.(… Zero)) and `[1,2]`
// means Cons.1.(Cons.2.Nil).

#include <charconv>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contcalc/diagnostic.hpp"
#include "contcalc/term.hpp"

namespace contcalc {

inline constexpr std::uint64_t kMaxNatLiteral = 10000;
inline constexpr int kMaxNesting = 1000;

namespace detail {

struct Token {
  enum class Kind { Name, Var, Nat, LParen, RParen, LBracket, RBracket, Comma, Dot, Arrow, Semi, Newline, End };
  Kind kind;
  std::string text;
  SourcePos pos;
};

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(std::string_view src, Diagnostics& diags) {
  using K = Token::Kind;
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, col};
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (c == '\n') {
      out.push_back({K::Newline, "\n", pos});
      advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      std::string text(src.substr(i, j - i));
      if (c == '_') {
        diags.push_back({pos, DiagnosticKind::Lex, DiagnosticCode::ReservedName,
                         "identifiers starting with '_' are reserved: '" + text + "'"});
      } else {
        out.push_back({std::isupper(static_cast<unsigned char>(c)) ? K::Name : K::Var, text, pos});
      }
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({K::Nat, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({K::Arrow, "->", pos});
      advance(2);
    } else {
      K kind;
      switch (c) {
        case '(': kind = K::LParen; break;
        case ')': kind = K::RParen; break;
        case '[': kind = K::LBracket; break;
        case ']': kind = K::RBracket; break;
        case ',': kind = K::Comma; break;
        case '.': kind = K::Dot; break;
        case ';': kind = K::Semi; break;
        default:
          diags.push_back({pos, DiagnosticKind::Lex, DiagnosticCode::UnexpectedCharacter,
                           std::string("unexpected character '") + c + "'"});
          advance(1);
          continue;
      }
      out.push_back({kind, std::string(1, c), pos});
      advance(1);
    }
  }
  out.push_back({K::End, "", SourcePos{line, col}});
  return out;
}

inline std::string describe(const Token& t) {
  using K = Token::Kind;
  switch (t.kind) {
    case K::Newline: return "end of line";
    case K::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

class Parser {
  using K = Token::Kind;

 public:
  Parser(std::vector<Token> tokens, Diagnostics& diags) : toks_(std::move(tokens)), diags_(diags) {}

  std::optional<Rhs> expr() {
    auto result = atom();
    if (!result) return std::nullopt;
    while (peek().kind == K::Dot) {
      take();
      auto arg = atom();
      if (!arg) return std::nullopt;
      result->args.push_back(std::move(*arg));
    }
    return result;
  }

  std::optional<Rule> rule() {
    const Token& first = peek();
    if (first.kind != K::Name) {
      error(first, first.kind == K::Var ? "a rule must start with a name, not variable '" + first.text + "'"
                                        : "expected a rule, found " + describe(first));
      return std::nullopt;
    }
    Rule r;
    r.head = Name(first.text);
    r.pos = first.pos;
    take();
    while (peek().kind == K::Dot) {
      take();
      const Token& p = peek();
      if (p.kind != K::Var) {
        error(p, "expected a parameter variable, found " + describe(p));
        return std::nullopt;
      }
      r.params.push_back(Var{p.text});
      r.param_pos.push_back(p.pos);
      take();
    }
    if (peek().kind != K::Arrow) {
      error(peek(), "expected '->', found " + describe(peek()));
      return std::nullopt;
    }
    take();
    auto rhs = expr();
    if (!rhs) return std::nullopt;
    r.rhs = std::move(*rhs);
    return r;
  }

  std::vector<Rule> program() {
    std::vector<Rule> rules;
    for (;;) {
      while (peek().kind == K::Newline || peek().kind == K::Semi) take();
      if (peek().kind == K::End) break;
      auto r = rule();
      if (r && !at_separator()) {
        error(peek(), "expected end of rule, found " + describe(peek()));
        r.reset();
      }
      if (r) {
        rules.push_back(std::move(*r));
      } else {
        recover();
      }
    }
    return rules;
  }

  std::optional<Rhs> lone_expr() {
    while (peek().kind == K::Newline) take();
    auto e = expr();
    if (!e) return std::nullopt;
    while (peek().kind == K::Newline) take();
    if (peek().kind != K::End) {
      error(peek(), "unexpected " + describe(peek()) + " after term");
      return std::nullopt;
    }
    return e;
  }

 private:
  const Token& peek() {
    if (nesting_ > 0)
      while (toks_[i_].kind == K::Newline) ++i_;
    return toks_[i_];
  }
  void take() {
    peek();
    if (toks_[i_].kind != K::End) ++i_;
  }
  bool at_separator() {
    auto k = peek().kind;
    return k == K::Newline || k == K::Semi || k == K::End;
  }
  void recover() {
    nesting_ = 0;
    while (!at_separator()) take();
  }
  void error(const Token& at, std::string msg, DiagnosticCode code = DiagnosticCode::UnexpectedToken) {
    diags_.push_back({at.pos, DiagnosticKind::Parse, code, std::move(msg)});
  }

  static Rhs name_rhs(const char* n, SourcePos pos) { return Rhs{Name(n), {}, pos}; }

  // Moves `args` in; a braced list would copy the whole chain built so far.
  static Rhs wrap(const char* n, SourcePos pos, Rhs first, std::optional<Rhs> second = std::nullopt) {
    Rhs out = name_rhs(n, pos);
    out.args.reserve(second ? 2 : 1);
    out.args.push_back(std::move(first));
    if (second) out.args.push_back(std::move(*second));
    return out;
  }

  std::optional<Rhs> nat(const Token& t) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || value > kMaxNatLiteral) {
      error(t, "natural literal " + t.text + " exceeds the limit of " + std::to_string(kMaxNatLiteral),
            DiagnosticCode::LiteralTooLarge);
      return std::nullopt;
    }
    Rhs out = name_rhs("Zero", t.pos);
    for (std::uint64_t k = 0; k < value; ++k) out = wrap("S", t.pos, std::move(out));
    return out;
  }

  std::optional<Rhs> list(const Token& open) {
    std::vector<Rhs> elems;
    if (peek().kind != K::RBracket) {
      for (;;) {
        const Token& t = peek();
        if (t.kind != K::Nat) {
          error(t, "list elements must be natural literals, found " + describe(t));
          return std::nullopt;
        }
        take();
        auto e = nat(t);
        if (!e) return std::nullopt;
        elems.push_back(std::move(*e));
        if (peek().kind == K::Comma) {
          take();
          continue;
        }
        break;
      }
    }
    if (peek().kind != K::RBracket) {
      error(peek(), "expected ',' or ']', found " + describe(peek()));
      return std::nullopt;
    }
    Rhs out = name_rhs("Nil", open.pos);
    for (auto it = elems.rbegin(); it != elems.rend(); ++it)
      out = wrap("Cons", open.pos, std::move(*it), std::move(out));
    return out;
  }

  std::optional<Rhs> atom() {
    const Token& t = peek();
    switch (t.kind) {
      case K::Name: take(); return Rhs{Name(t.text), {}, t.pos};
      case K::Var: take(); return Rhs{Var{t.text}, {}, t.pos};
      case K::Nat: take(); return nat(t);
      case K::LBracket:
      case K::LParen: {
        if (nesting_ >= kMaxNesting) {
          error(t, "nesting deeper than " + std::to_string(kMaxNesting), DiagnosticCode::NestingTooDeep);
          return std::nullopt;
        }
        const Token& open = t;
        ++nesting_;
        take();
        std::optional<Rhs> inner = open.kind == K::LParen ? expr() : list(open);
        if (!inner) return std::nullopt;
        K close = open.kind == K::LParen ? K::RParen : K::RBracket;
        if (peek().kind != close) {
          error(peek(), std::string("expected '") + (close == K::RParen ? ")" : "]") + "', found " +
                            describe(peek()));
          return std::nullopt;
        }
        --nesting_;
        take();
        return inner;
      }
      default:
        error(t, "expected a name, variable, literal or '(', found " + describe(t));
        return std::nullopt;
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int nesting_ = 0;
  Diagnostics& diags_;
};

inline std::optional<Term> rhs_to_term(const Rhs& rhs, Diagnostics& diags) {
  std::optional<Term> out;
  std::vector<Term> args;
  bool ok = true;
  for (const auto& a : rhs.args) {
    auto t = rhs_to_term(a, diags);
    if (t) {
      args.push_back(std::move(*t));
    } else {
      ok = false;
    }
  }
  if (const Var* v = std::get_if<Var>(&rhs.head)) {
    diags.push_back({rhs.pos, DiagnosticKind::Parse, DiagnosticCode::VariableInTerm,
                     "terms contain no variables, found '" + v->text + "'"});
    return std::nullopt;
  }
  if (ok) out.emplace(std::get<Name>(rhs.head), std::move(args));
  return out;
}

}  // namespace detail

inline Checked<Program> parse_program(std::string_view text) {
  Diagnostics diags;
  auto tokens = detail::lex(text, diags);
  detail::Parser parser(std::move(tokens), diags);
  auto rules = parser.program();
  auto program = validate_program(std::move(rules));
  if (!program) diags.insert(diags.end(), program.error().begin(), program.error().end());
  if (!diags.empty()) return unexpected(std::move(diags));
  return std::move(program).value();
}

inline Checked<Term> parse_term(std::string_view text) {
  Diagnostics diags;
  auto tokens = detail::lex(text, diags);
  detail::Parser parser(std::move(tokens), diags);
  auto rhs = parser.lone_expr();
  std::optional<Term> term;
  if (rhs) term = detail::rhs_to_term(*rhs, diags);
  if (!diags.empty() || !term) return unexpected(std::move(diags));
  return std::move(*term);
}

/// Minimal parentheses: an argument is wrapped iff it has arguments itself.
inline std::string format_term(const Term& t) {
  struct Frame {
    const Term* term;
    std::size_t next;
    bool paren;
  };
  std::string out;
  std::vector<Frame> stack{{&t, 0, false}};
  out += t.head().text();
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.term->length()) {
      const Term& arg = f.term->args()[f.next++];
      bool paren = arg.length() > 0;
      out += '.';
      if (paren) out += '(';
      out += arg.head().text();
      stack.push_back({&arg, 0, paren});
    } else {
      if (f.paren) out += ')';
      stack.pop_back();
    }
  }
  return out;
}

inline void format_rhs_to(const Rhs& rhs, std::string& out) {
  if (const Name* n = std::get_if<Name>(&rhs.head)) {
    out += n->text();
  } else {
    out += std::get<Var>(rhs.head).text;
  }
  for (const auto& a : rhs.args) {
    out += '.';
    if (!a.args.empty()) out += '(';
    format_rhs_to(a, out);
    if (!a.args.empty()) out += ')';
  }
}

inline std::string format_rhs(const Rhs& rhs) {
  std::string out;
  format_rhs_to(rhs, out);
  return out;
}

inline std::string format_rule(const Rule& r) {
  std::string out = r.head.text();
  for (const auto& p : r.params) out += "." + p.text;
  out += " -> ";
  format_rhs_to(r.rhs, out);
  return out;
}

/// One rule per line, each terminated by '\n', in program order.
inline std::string format_program(const Program& p) {
  std::string out;
  for (const auto& r : p.rules()) {
    out += format_rule(r);
    out += '\n';
  }
  return out;
}

}  // namespace contcalc
