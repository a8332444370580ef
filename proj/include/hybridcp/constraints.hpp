#ifndef HYBRIDCP_CONSTRAINTS_HPP
#define HYBRIDCP_CONSTRAINTS_HPP

#include "hybridcp/solver.hpp"

#include <vector>

namespace hybridcp {

/**
 * AllDifferent with arc consistency (matching + strongly connected
 * components on the value graph). All variables need enumerated domains.
 */
class AllDifferent final : public Propagator {
public:
    explicit AllDifferent(std::vector<IntVar> vars);

    std::string name() const override { return "alldifferent"; }
    std::vector<IntVar> int_vars() const override { return vars_; }
    bool propagate(Solver& solver) override;

private:
    std::vector<IntVar> vars_;
};

/// value = table[index], index counted from 0. Arc consistent on both
/// variables (only bound pruning on a bounded value variable).
class Element final : public Propagator {
public:
    Element(IntVar value, std::vector<IntDomain::value_type> table, IntVar index);

    std::string name() const override { return "element"; }
    std::vector<IntVar> int_vars() const override { return {value_, index_}; }
    bool propagate(Solver& solver) override;

private:
    IntVar value_;
    std::vector<IntDomain::value_type> table_;
    IntVar index_;
};

/// sum(vars) = total, bounds consistent.
class Sum final : public Propagator {
public:
    Sum(std::vector<IntVar> vars, IntVar total);

    std::string name() const override { return "sum"; }
    std::vector<IntVar> int_vars() const override;
    bool propagate(Solver& solver) override;

private:
    std::vector<IntVar> vars_;
    IntVar total_;
};

PropId post_alldifferent(Solver& solver, std::vector<IntVar> vars);
PropId post_element(Solver& solver, IntVar value, std::vector<IntDomain::value_type> table,
                    IntVar index);
PropId post_sum(Solver& solver, std::vector<IntVar> vars, IntVar total);

} // namespace hybridcp

#endif // HYBRIDCP_CONSTRAINTS_HPP
