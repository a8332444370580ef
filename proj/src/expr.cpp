#include "hybridcp/expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace hybridcp {

ExprNode ExprNode::constant(double v)
{
    ExprNode n;
    n.kind = NodeKind::Constant;
    n.value = v;
    return n;
}

ExprNode ExprNode::variable(std::size_t index)
{
    ExprNode n;
    n.kind = NodeKind::Variable;
    n.var_index = index;
    return n;
}

ExprNode ExprNode::make_unary(UnaryOp op, ExprNode arg)
{
    ExprNode n;
    n.kind = NodeKind::Unary;
    n.unary = op;
    n.children.push_back(std::move(arg));
    return n;
}

ExprNode ExprNode::make_binary(BinaryOp op, ExprNode lhs, ExprNode rhs)
{
    ExprNode n;
    n.kind = NodeKind::Binary;
    n.binary = op;
    n.children.reserve(2);
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
}

bool operator==(const ExprNode& a, const ExprNode& b)
{
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case NodeKind::Constant: return a.value == b.value;
    case NodeKind::Variable: return a.var_index == b.var_index;
    case NodeKind::Unary: return a.unary == b.unary && a.children == b.children;
    case NodeKind::Binary: return a.binary == b.binary && a.children == b.children;
    }
    return false;
}

std::string_view name(RelOp op) noexcept
{
    switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Lt: return "<";
    case RelOp::Gt: return ">";
    case RelOp::Le: return "<=";
    case RelOp::Ge: return ">=";
    }
    return "?";
}

namespace {

void print(const ExprNode& e, std::string& out)
{
    switch (e.kind) {
    case NodeKind::Constant: {
        std::array<char, 64> buf{};
        auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), e.value);
        if (e.value < 0) {
            out += '(';
            out.append(buf.data(), ptr);
            out += ')';
        } else {
            out.append(buf.data(), ptr);
        }
        return;
    }
    case NodeKind::Variable:
        out += '{';
        out += std::to_string(e.var_index);
        out += '}';
        return;
    case NodeKind::Unary:
        if (e.unary == UnaryOp::Neg) {
            out += "(-";
            print(e.children[0], out);
            out += ')';
        } else {
            out += name(e.unary);
            out += '(';
            print(e.children[0], out);
            out += ')';
        }
        return;
    case NodeKind::Binary:
        switch (e.binary) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
            out += '(';
            print(e.children[0], out);
            out += name(e.binary);
            print(e.children[1], out);
            out += ')';
            return;
        default:
            out += name(e.binary);
            out += '(';
            print(e.children[0], out);
            out += ',';
            print(e.children[1], out);
            out += ')';
            return;
        }
    }
}

} // namespace

std::string to_string(const ExprNode& e)
{
    std::string out;
    print(e, out);
    return out;
}

std::string to_string(const Relation& r)
{
    std::string out;
    print(r.lhs, out);
    out += name(r.op);
    print(r.rhs, out);
    return out;
}

Interval evaluate(const ExprNode& e, const Box& box)
{
    switch (e.kind) {
    case NodeKind::Constant:
        return Interval(e.value);
    case NodeKind::Variable:
        return e.var_index < box.size() ? box[e.var_index] : Interval::entire();
    case NodeKind::Unary:
        return unary_op(e.unary, evaluate(e.children[0], box));
    case NodeKind::Binary:
        return binary_op(e.binary, evaluate(e.children[0], box), evaluate(e.children[1], box));
    }
    return Interval::entire();
}

std::size_t arity_of(const ExprNode& e)
{
    if (e.kind == NodeKind::Variable) {
        return e.var_index + 1;
    }
    std::size_t n = 0;
    for (const auto& child : e.children) {
        n = std::max(n, arity_of(child));
    }
    return n;
}

std::size_t arity_of(const Relation& r)
{
    return std::max(arity_of(r.lhs), arity_of(r.rhs));
}

bool is_inequality(RelOp op) noexcept
{
    return op != RelOp::Eq;
}

Relation negate(const Relation& r)
{
    Relation out = r;
    switch (r.op) {
    case RelOp::Le: out.op = RelOp::Gt; break;
    case RelOp::Lt: out.op = RelOp::Ge; break;
    case RelOp::Ge: out.op = RelOp::Lt; break;
    case RelOp::Gt: out.op = RelOp::Le; break;
    case RelOp::Eq:
        throw std::invalid_argument("equality constraints cannot be negated: " + to_string(r));
    }
    return out;
}

} // namespace hybridcp
