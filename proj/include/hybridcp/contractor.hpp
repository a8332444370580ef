#ifndef HYBRIDCP_CONTRACTOR_HPP
#define HYBRIDCP_CONTRACTOR_HPP

#include "hybridcp/expr.hpp"
#include "hybridcp/interval.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridcp {

/// Outcome of one contraction. The numeric values are part of the flat
/// calling convention and must not change.
enum class ContractStatus : int {
    Fail = 0,     ///< no tuple of the box satisfies the system
    Entailed = 1, ///< bounds may have shrunk; every remaining tuple satisfies it
    Contract = 2, ///< at least one bound strictly moved
    Nothing = 3,  ///< no bound moved and nothing could be proven
};

std::string_view name(ContractStatus s) noexcept;

class UnknownContractor : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class MalformedBounds : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * A relation compiled to a post-order tape for HC4-revise.
 *
 * Node i only references children with smaller indices, so the forward pass
 * is a single left-to-right sweep and the backward pass a right-to-left one.
 */
class Hc4Program {
public:
    explicit Hc4Program(Relation relation);

    const Relation& relation() const noexcept { return relation_; }

    /// Contract `box` in place. Returns false when the box became empty.
    /// `scratch` is resized as needed; pass the same vector to avoid churn.
    bool revise(std::span<Interval> box, std::vector<Interval>& scratch) const;

    /// Interval images of both sides over `box`.
    std::pair<Interval, Interval> images(std::span<const Interval> box,
                                         std::vector<Interval>& scratch) const;

    /// True when every point of `box` satisfies the relation.
    bool entailed(std::span<const Interval> box, std::vector<Interval>& scratch) const;

private:
    struct Node {
        NodeKind kind;
        UnaryOp unary;
        BinaryOp binary;
        double value;
        std::size_t var;
        std::size_t lhs; // child tape indices
        std::size_t rhs;
    };

    std::size_t compile(const ExprNode& e);
    void forward(std::span<const Interval> box, std::vector<Interval>& values) const;

    Relation relation_;
    std::vector<Node> tape_;
    std::size_t lhs_root_ = 0;
    std::size_t rhs_root_ = 0;
    bool identical_sides_ = false;
};

/// One HC4-revise step of `r` over `box`. Returns the contracted box
/// (all components EMPTY when infeasible).
Box hc4_revise(const Relation& r, Box box);

/// Stopping rule of the propagation loop: a sweep that shrinks no interval by
/// more than `ratio` of its width ends the loop.
struct FixpointOptions {
    double ratio = 0.01;
    std::size_t max_sweeps = 1000;
};

/// An (in)equation system over `arity` variables.
class Contractor {
public:
    Contractor(std::size_t id, std::vector<Relation> relations, std::size_t arity);

    std::size_t id() const noexcept { return id_; }
    std::size_t arity() const noexcept { return arity_; }
    const std::vector<Hc4Program>& programs() const noexcept { return programs_; }

    /// Round-robin HC4-revise until the stopping rule fires or the box empties.
    /// Returns false when the box became empty.
    bool fixpoint(std::span<Interval> box, const FixpointOptions& options) const;

    bool entailed(std::span<const Interval> box) const;

private:
    std::size_t id_;
    std::size_t arity_;
    std::vector<Hc4Program> programs_;
};

Box fixpoint_contract(const Contractor& c, Box box, const FixpointOptions& options = {});

/**
 * Contractors in creation order, addressed by dense ids 0..n-1.
 *
 * Creation happens while a model is being built; afterwards `contract` is a
 * const, reentrant function of its arguments.
 */
class ContractorRegistry {
public:
    explicit ContractorRegistry(FixpointOptions options = {}) : options_(options) {}

    /// Parse every function against `arity` and store them as one contractor.
    /// ParseError propagates with the offending text in its message.
    std::size_t create_contractor(std::span<const std::string> functions, std::size_t arity);
    std::size_t create_contractor(std::vector<Relation> relations, std::size_t arity);

    /**
     * Contract the flat bounds (x1-, x1+, ..., xn-, xn+) in place.
     *
     * On Fail the content of `bounds` is unspecified. Throws
     * UnknownContractor for a bad id and MalformedBounds when the length is
     * not 2 * arity or a pair is not an interval.
     */
    ContractStatus contract(std::size_t cont_index, std::span<double> bounds) const;

    const Contractor& at(std::size_t cont_index) const;
    std::size_t size() const noexcept { return contractors_.size(); }
    const FixpointOptions& options() const noexcept { return options_; }

private:
    FixpointOptions options_;
    std::vector<Contractor> contractors_;
};

} // namespace hybridcp

#endif // HYBRIDCP_CONTRACTOR_HPP
