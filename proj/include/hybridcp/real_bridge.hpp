#ifndef HYBRIDCP_REAL_BRIDGE_HPP
#define HYBRIDCP_REAL_BRIDGE_HPP

#include "hybridcp/solver.hpp"

#include <string>
#include <vector>

namespace hybridcp {

/**
 * Continuous constraint system over real variables and real views, filtered
 * by one registry contractor.
 *
 * Each call marshals the scope bounds into a flat buffer, contracts it and
 * writes the result back (views round inward). ENTAILED makes the
 * propagator passive until backtrack.
 */
class RealPropagator final : public Propagator {
public:
    RealPropagator(std::size_t contractor, std::vector<RealTerm> scope,
                   std::vector<std::string> functions);

    std::string name() const override;
    std::vector<IntVar> int_vars() const override;
    std::vector<RealVar> real_vars() const override;
    bool propagate(Solver& solver) override;
    std::optional<bool> entailed(const Solver& solver) const override;

    std::size_t contractor() const noexcept { return contractor_; }
    const std::vector<RealTerm>& scope() const noexcept { return scope_; }
    const std::vector<std::string>& functions() const noexcept { return functions_; }
    /// Doubles copied into the contract buffer by the last call.
    std::size_t last_marshalled() const noexcept { return marshalled_; }

private:
    std::size_t contractor_;
    std::vector<RealTerm> scope_;
    std::vector<std::string> functions_;
    std::vector<double> buffer_;
    std::size_t marshalled_ = 0;
};

/**
 * b <=> (conjunction of relations), with b a 0/1 variable.
 *
 * While b is free the conjunction is probed on a copy of the bounds: FAIL
 * fixes b to 0, and b becomes 1 when it holds on the whole current box. With b = 1 the conjunction is
 * enforced; with b = 0 the disjunction of the negated relations is, which
 * filters once a single relation is left undecided. Only inequalities can
 * be negated.
 */
class ReifiedRealPropagator final : public Propagator {
public:
    struct Contractors {
        std::size_t conjunction;
        std::vector<std::size_t> positive; // one per relation
        std::vector<std::size_t> negated;  // one per relation
    };

    ReifiedRealPropagator(IntVar b, Contractors contractors, std::vector<RealTerm> scope,
                          std::vector<std::string> functions);

    std::string name() const override;
    std::vector<IntVar> int_vars() const override;
    std::vector<RealVar> real_vars() const override;
    bool propagate(Solver& solver) override;

    IntVar indicator() const noexcept { return b_; }
    const Contractors& contractor_ids() const noexcept { return ids_; }

private:
    bool enforce(Solver& solver, std::size_t contractor);
    bool enforce_negation(Solver& solver);
    bool fails(const Solver& solver, std::size_t contractor);
    bool holds(const Solver& solver, std::size_t contractor) const;

    IntVar b_;
    Contractors ids_;
    std::vector<RealTerm> scope_;
    std::vector<std::string> functions_;
    std::vector<double> buffer_;
};

/// Parse `functions` over `scope` ({i} is the i-th scope term), register
/// one contractor and post its propagator. ParseError propagates.
PropId post_real(Solver& solver, std::vector<std::string> functions, std::vector<RealTerm> scope);

/// b must have a domain within {0, 1}. Throws std::invalid_argument when a
/// relation is an equation (its negation has no contractor).
PropId post_reified(Solver& solver, IntVar b, std::vector<std::string> functions,
                    std::vector<RealTerm> scope);

} // namespace hybridcp

#endif // HYBRIDCP_REAL_BRIDGE_HPP
