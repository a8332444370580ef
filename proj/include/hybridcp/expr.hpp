#ifndef HYBRIDCP_EXPR_HPP
#define HYBRIDCP_EXPR_HPP

#include "hybridcp/interval.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hybridcp {

enum class NodeKind { Constant, Variable, Unary, Binary };

/**
 * Node of a continuous expression over indexed variables {0}, {1}, ...
 *
 * Constants carry `value`, variables carry `var_index`, operator nodes
 * carry their operator and one (unary) or two (binary) children.
 */
struct ExprNode {
    NodeKind kind = NodeKind::Constant;
    UnaryOp unary = UnaryOp::Neg;
    BinaryOp binary = BinaryOp::Add;
    double value = 0.0;
    std::size_t var_index = 0;
    std::vector<ExprNode> children;

    static ExprNode constant(double v);
    static ExprNode variable(std::size_t index);
    static ExprNode make_unary(UnaryOp op, ExprNode arg);
    static ExprNode make_binary(BinaryOp op, ExprNode lhs, ExprNode rhs);

    /// Structural equality; compares only the fields meaningful for `kind`.
    friend bool operator==(const ExprNode& a, const ExprNode& b);
};

enum class RelOp { Eq, Lt, Gt, Le, Ge };

std::string_view name(RelOp op) noexcept;

/// `lhs rel rhs` with exactly one relational operator at the top.
struct Relation {
    ExprNode lhs;
    RelOp op = RelOp::Eq;
    ExprNode rhs;

    friend bool operator==(const Relation& a, const Relation& b) = default;
};

/// Malformed constraint text. `position` is a 0-based offset into `source`.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t position, std::string detail);

    const std::string& source() const noexcept { return source_; }
    std::size_t position() const noexcept { return position_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string source_;
    std::size_t position_;
    std::string detail_;
};

/**
 * Parse one constraint of the string language.
 *
 * Grammar (whitespace ignored):
 *
 *     relation := expr relop expr
 *     relop    := "=" | "<" | ">" | "<=" | ">="
 *     expr     := term (("+" | "-") term)*
 *     term     := unary (("*" | "/") unary)*
 *     unary    := "-" unary | primary
 *     primary  := number | "{" index "}" | name "(" expr ["," expr] ")"
 *               | "(" expr ")"
 *
 * Binary operators are left-associative; unary minus binds tighter than
 * `*` and `/`. There is no `^`: exponentiation is `pow(x, e)`.
 * Every `{k}` must satisfy k < arity.
 */
Relation parse(std::string_view source, std::size_t arity);

/// Fully parenthesized text that parses back to the same tree. The grammar
/// has no negative literals, so a negative constant comes back as the
/// negation of its magnitude.
std::string to_string(const ExprNode& e);
std::string to_string(const Relation& r);

/// Natural interval extension of `e` over `box`.
Interval evaluate(const ExprNode& e, const Box& box);

/// Largest `{k}` index referenced plus one (0 when there is none).
std::size_t arity_of(const ExprNode& e);
std::size_t arity_of(const Relation& r);

bool is_inequality(RelOp op) noexcept;
/// Complement of an inequality: <= becomes >, < becomes >=, and so on.
/// Throws std::invalid_argument for `=`.
Relation negate(const Relation& r);

} // namespace hybridcp

#endif // HYBRIDCP_EXPR_HPP
