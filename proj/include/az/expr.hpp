#pragma once

#include "az/ratfunc.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace az {

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& what, size_t off)
        : std::runtime_error(what + " at offset " + std::to_string(off)), offset(off) {}
};

// Expression tree for the canonical input syntax: integer literals,
// identifiers, `+ - * / ^` with standard precedence (`^` right-associative,
// binding tighter than unary minus), parentheses, and the function exp(...).
struct ExprNode {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Pow, Neg, Exp };

    Kind kind;
    Rational value;         // Number
    std::string name;       // Symbol
    std::vector<ExprNode> children;
    size_t offset = 0;      // position in the source text, for diagnostics

    std::string describe() const;  // compact rendering for error messages
};

ExprNode parse_expression(const std::string& text);

struct NotRational : MathError {
    explicit NotRational(const std::string& what) : MathError(what) {}
};

struct UnknownSymbol : MathError {
    std::string symbol;
    UnknownSymbol(const std::string& sym, size_t off)
        : MathError("unknown symbol '" + sym + "' at offset " + std::to_string(off)), symbol(sym) {}
};

// Lowers a tree to a rational function. Only integer exponents are accepted
// and exp(...) is rejected (NotRational). Symbols must come from `allowed`.
RatFunc expr_to_ratfunc(const ExprNode& node, const std::set<std::string>& allowed);

// Convenience: parse + lower.
RatFunc parse_ratfunc(const std::string& text, const std::set<std::string>& allowed);

}  // namespace az
