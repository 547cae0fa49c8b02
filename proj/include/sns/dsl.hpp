// dsl.hpp — the .sns text format.
//
// Grammar (whitespace and `#` line comments are insignificant, except
// that `#` directly after the keyword `kind` is the radix-multiplicity
// kind token):
//
//   cao        := "cao" IDENT "{" entities op+ init? "}"
//   entities   := "entities" ":" IDENT ("," IDENT)* ";"
//   op         := "op" IDENT ":" FORM "(" operand ("," operand)* ")"
//                 "->" "(" image ("," image)* ")" kind? ";"
//   operand    := IDENT "/" NAT              entity / radix
//   image      := IDENT "*" NAT              entity * conversion rate
//   kind       := "kind" ("#" | "delta" | "fact" | "fn" IDENT)
//   init       := "init" ":" IDENT "=" NAT ("," IDENT "=" NAT)* ";"
//   FORM       := "L" | "D" | "F" | "M"
//
// Kind defaults to "#". Naturals are unbounded. Parsing either yields a
// network that passed full validation or a list of errors with source
// spans; serialize() renders the canonical one-declaration-per-line form
// and round-trips through parse() unchanged.

#pragma once

#include "sns/core.hpp"

#include <string_view>

namespace sns {

struct SourceSpan {
    std::size_t line = 1;    // 1-based
    std::size_t column = 1;  // 1-based
    std::size_t offset = 0;  // byte offset into the input
    std::size_t length = 0;

    bool operator==(const SourceSpan&) const = default;
};

struct ParseError {
    SourceSpan span;
    std::string message;
    std::string expected;  // token hint, may be empty
};

/// Named carry/remainder hook pairs usable as `kind fn NAME`.
using HookRegistry = std::map<std::string, std::pair<Hook, Hook>>;

/// Built-in hooks: "div" (floor-divide carry, modulo remainder).
const HookRegistry& default_hooks();

struct ParseResult {
    std::optional<Cao> cao;
    std::vector<ParseError> errors;

    bool ok() const { return cao.has_value(); }
};

/// Parses one network. Every error carries an in-bounds span; semantic
/// violations (unknown entities, double outputs, ...) are reported at the
/// offending token.
ParseResult parse(std::string_view text, const HookRegistry& hooks = default_hooks());

/// Canonical text: declaration order preserved, one declaration per line,
/// kind emitted only when not radix-multiplicity. parse(serialize(cao))
/// reconstructs an equal network. Defined for networks whose entity names
/// are plain identifiers (throws std::invalid_argument otherwise).
std::string serialize(const Cao& cao);

}  // namespace sns
