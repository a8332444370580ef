#include "hybridcp/contractor.hpp"

namespace hybridcp {

Hc4Program::Hc4Program(Relation relation) : relation_(std::move(relation))
{
    lhs_root_ = compile(relation_.lhs);
    rhs_root_ = compile(relation_.rhs);
    identical_sides_ = relation_.lhs == relation_.rhs;
}

std::size_t Hc4Program::compile(const ExprNode& e)
{
    Node node{e.kind, e.unary, e.binary, e.value, e.var_index, 0, 0};
    if (e.kind == NodeKind::Unary) {
        node.lhs = compile(e.children[0]);
    } else if (e.kind == NodeKind::Binary) {
        node.lhs = compile(e.children[0]);
        node.rhs = compile(e.children[1]);
    }
    tape_.push_back(node);
    return tape_.size() - 1;
}

void Hc4Program::forward(std::span<const Interval> box, std::vector<Interval>& values) const
{
    values.resize(tape_.size());
    for (std::size_t i = 0; i < tape_.size(); ++i) {
        const Node& n = tape_[i];
        switch (n.kind) {
        case NodeKind::Constant:
            values[i] = Interval(n.value);
            break;
        case NodeKind::Variable:
            values[i] = n.var < box.size() ? box[n.var] : Interval::entire();
            break;
        case NodeKind::Unary:
            values[i] = unary_op(n.unary, values[n.lhs]);
            break;
        case NodeKind::Binary:
            values[i] = binary_op(n.binary, values[n.lhs], values[n.rhs]);
            break;
        }
    }
}

std::pair<Interval, Interval> Hc4Program::images(std::span<const Interval> box,
                                                 std::vector<Interval>& scratch) const
{
    forward(box, scratch);
    return {scratch[lhs_root_], scratch[rhs_root_]};
}

bool Hc4Program::revise(std::span<Interval> box, std::vector<Interval>& values) const
{
    forward(box, values);
    const Interval lhs = values[lhs_root_];
    const Interval rhs = values[rhs_root_];
    constexpr double inf = Interval::kInf;

    Interval lhs2;
    Interval rhs2;
    switch (relation_.op) {
    case RelOp::Eq:
        lhs2 = rhs2 = intersect(lhs, rhs);
        break;
    case RelOp::Le:
    case RelOp::Lt:
        lhs2 = intersect(lhs, {-inf, rhs.hi()});
        rhs2 = lhs2.is_empty() ? lhs2 : intersect(rhs, {lhs2.lo(), inf});
        break;
    case RelOp::Ge:
    case RelOp::Gt:
        lhs2 = intersect(lhs, {rhs.lo(), inf});
        rhs2 = lhs2.is_empty() ? lhs2 : intersect(rhs, {-inf, lhs2.hi()});
        break;
    }
    if (lhs2.is_empty() || rhs2.is_empty()) {
        return false;
    }
    values[lhs_root_] = lhs2;
    values[rhs_root_] = rhs2;

    // parents precede children when walking the tape backwards
    for (std::size_t i = tape_.size(); i-- > 0;) {
        const Node& n = tape_[i];
        const Interval& target = values[i];
        if (target.is_empty()) {
            return false;
        }
        switch (n.kind) {
        case NodeKind::Constant:
            if (!target.contains(n.value)) {
                return false;
            }
            break;
        case NodeKind::Variable:
            box[n.var] = intersect(box[n.var], target);
            if (box[n.var].is_empty()) {
                return false;
            }
            break;
        case NodeKind::Unary:
            values[n.lhs] = inverse_unary(n.unary, target, values[n.lhs]);
            break;
        case NodeKind::Binary: {
            auto [a, b] = inverse_binary(n.binary, target, values[n.lhs], values[n.rhs]);
            values[n.lhs] = a;
            values[n.rhs] = b;
            break;
        }
        }
    }
    return true;
}

bool Hc4Program::entailed(std::span<const Interval> box, std::vector<Interval>& scratch) const
{
    const auto [lhs, rhs] = images(box, scratch);
    if (lhs.is_empty() || rhs.is_empty()) {
        return false;
    }
    if (identical_sides_ && relation_.op != RelOp::Lt && relation_.op != RelOp::Gt) {
        return true;
    }
    switch (relation_.op) {
    case RelOp::Eq: return lhs.is_point() && rhs.is_point() && lhs.lo() == rhs.lo();
    case RelOp::Le: return lhs.hi() <= rhs.lo();
    case RelOp::Lt: return lhs.hi() < rhs.lo();
    case RelOp::Ge: return lhs.lo() >= rhs.hi();
    case RelOp::Gt: return lhs.lo() > rhs.hi();
    }
    return false;
}

Box hc4_revise(const Relation& r, Box box)
{
    const Hc4Program program(r);
    std::vector<Interval> scratch;
    if (!program.revise(box, scratch)) {
        box.assign(box.size(), Interval::empty());
    }
    return box;
}

} // namespace hybridcp
