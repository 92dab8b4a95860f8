#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "contcalc/expected.hpp"

namespace contcalc {

/// 1-based position in source text; line 0 means "not from source".
struct SourcePos {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class DiagnosticKind { Lex, Parse, Validation };

enum class DiagnosticCode {
  UnexpectedCharacter,
  ReservedName,
  UnexpectedToken,
  LiteralTooLarge,
  NestingTooDeep,
  VariableInTerm,
  DuplicateDefinition,
  RepeatedParameter,
  UnboundVariable,
  ConflictingDefinition,
};

inline std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::Lex: return "lex";
    case DiagnosticKind::Parse: return "parse";
    case DiagnosticKind::Validation: return "validation";
  }
  return "?";
}

inline std::string_view to_string(DiagnosticCode code) {
  switch (code) {
    case DiagnosticCode::UnexpectedCharacter: return "UnexpectedCharacter";
    case DiagnosticCode::ReservedName: return "ReservedName";
    case DiagnosticCode::UnexpectedToken: return "UnexpectedToken";
    case DiagnosticCode::LiteralTooLarge: return "LiteralTooLarge";
    case DiagnosticCode::NestingTooDeep: return "NestingTooDeep";
    case DiagnosticCode::VariableInTerm: return "VariableInTerm";
    case DiagnosticCode::DuplicateDefinition: return "DuplicateDefinition";
    case DiagnosticCode::RepeatedParameter: return "RepeatedParameter";
    case DiagnosticCode::UnboundVariable: return "UnboundVariable";
    case DiagnosticCode::ConflictingDefinition: return "ConflictingDefinition";
  }
  return "?";
}

struct Diagnostic {
  SourcePos pos;
  DiagnosticKind kind = DiagnosticKind::Parse;
  DiagnosticCode code = DiagnosticCode::UnexpectedToken;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

/// Value or the diagnostics explaining why there is none.
template <class T>
using Checked = Expected<T, Diagnostics>;

/// `<line>:<col>: <kind> error [<Code>]: <message>`, prefixed by `origin:` when given.
inline std::string format_diagnostic(const Diagnostic& d, std::string_view origin = {}) {
  std::ostringstream os;
  if (!origin.empty()) os << origin << ':';
  os << d.pos.line << ':' << d.pos.column << ": " << to_string(d.kind) << " error ["
     << to_string(d.code) << "]: " << d.message;
  return os.str();
}

inline bool has_code(const Diagnostics& ds, DiagnosticCode code) {
  for (const auto& d : ds)
    if (d.code == code) return true;
  return false;
}

}  // namespace contcalc
