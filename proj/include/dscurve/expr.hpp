#ifndef DSCURVE_EXPR_HPP
#define DSCURVE_EXPR_HPP

// Arithmetic-expression front end shared by every text format in the library
// (field elements, F_q polynomials, rational functions, integer polynomials,
// curve equations). Parsing produces a small AST which each consumer folds
// into its own ring via `fold`.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dscurve/error.hpp"

namespace dsc::expr {

struct Node {
    enum class Kind { Number, Symbol, Add, Sub, Neg, Mul, Div, Pow };
    Kind kind;
    std::string text;         // decimal digits (Number) or identifier (Symbol)
    unsigned long exponent{};  // Pow only
    std::shared_ptr<const Node> lhs, rhs;
};

using NodePtr = std::shared_ptr<const Node>;

/// Parses `+ - * / ^`, parentheses, braces (TeX-style `x^{13}`), decimal
/// literals, identifiers, and implicit multiplication by juxtaposition.
NodePtr parse(std::string_view text);

/// Folds an AST into a ring. `Ring` must provide:
///   T number(const std::string&), T symbol(const std::string&),
///   T add(T,T), T sub(T,T), T neg(T), T mul(T,T), T div(T,T), T pow(T, unsigned long).
template <class Ring>
auto fold(const Node& n, Ring& ring) -> decltype(ring.number(std::string{})) {
    switch (n.kind) {
        case Node::Kind::Number:
            return ring.number(n.text);
        case Node::Kind::Symbol:
            return ring.symbol(n.text);
        case Node::Kind::Add:
            return ring.add(fold(*n.lhs, ring), fold(*n.rhs, ring));
        case Node::Kind::Sub:
            return ring.sub(fold(*n.lhs, ring), fold(*n.rhs, ring));
        case Node::Kind::Neg:
            return ring.neg(fold(*n.lhs, ring));
        case Node::Kind::Mul:
            return ring.mul(fold(*n.lhs, ring), fold(*n.rhs, ring));
        case Node::Kind::Div:
            return ring.div(fold(*n.lhs, ring), fold(*n.rhs, ring));
        case Node::Kind::Pow:
            return ring.pow(fold(*n.lhs, ring), n.exponent);
    }
    throw ParseError("corrupt expression tree");
}

/// Splits `a,b,c` (or another separator) into trimmed, non-empty items.
std::vector<std::string> split_list(std::string_view text, char sep = ',');

/// Removes all whitespace.
std::string strip_spaces(std::string_view text);

}  // namespace dsc::expr

#endif
