#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace protoforge {

/// Minimal SMT-LIB2 S-expression: an atom or a list. Quoted symbols keep
/// their bars (`|a b|`) and string literals keep their quotes so printing
/// reproduces the token exactly.
struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;

    static SExpr make_atom(std::string a) { return SExpr{false, std::move(a), {}}; }
    static SExpr make_list(std::vector<SExpr> xs) { return SExpr{true, {}, std::move(xs)}; }

    /// Atom text with surrounding bars removed.
    std::string symbol() const;

    bool operator==(const SExpr&) const = default;
};

/// Parses every top-level expression; `;` comments are skipped.
/// Throws SmtError on unbalanced parentheses or unterminated tokens.
std::vector<SExpr> parse_sexprs(std::string_view text);

std::string to_string(const SExpr& e);

} // namespace protoforge
