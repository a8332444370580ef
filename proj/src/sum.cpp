#include "hybridcp/constraints.hpp"

#include <algorithm>
#include <limits>

namespace hybridcp {

namespace {

using Wide = __int128;
using Value = IntDomain::value_type;

Value clamp(Wide w)
{
    constexpr Wide lo = std::numeric_limits<Value>::min();
    constexpr Wide hi = std::numeric_limits<Value>::max();
    return static_cast<Value>(std::clamp(w, lo, hi));
}

} // namespace

Sum::Sum(std::vector<IntVar> vars, IntVar total) : vars_(std::move(vars)), total_(total) {}

std::vector<IntVar> Sum::int_vars() const
{
    auto all = vars_;
    all.push_back(total_);
    return all;
}

bool Sum::propagate(Solver& solver)
{
    // Iterate to a local fixpoint: the solver does not re-run the propagator
    // for its own changes.
    for (bool changed = true; changed;) {
        changed = false;
        Wide lo = 0;
        Wide hi = 0;
        for (IntVar x : vars_) {
            lo += solver.domain(x).min();
            hi += solver.domain(x).max();
        }
        const auto& t = solver.domain(total_);
        const auto t_size = t.size();
        if (!solver.restrict(total_, clamp(lo), clamp(hi))) {
            return false;
        }
        changed |= solver.domain(total_).size() != t_size;
        const Wide t_lo = solver.domain(total_).min();
        const Wide t_hi = solver.domain(total_).max();
        for (IntVar x : vars_) {
            const auto& d = solver.domain(x);
            const Wide rest_lo = lo - d.min();
            const Wide rest_hi = hi - d.max();
            const auto size = d.size();
            if (!solver.restrict(x, clamp(t_lo - rest_hi), clamp(t_hi - rest_lo))) {
                return false;
            }
            if (solver.domain(x).size() != size) {
                changed = true;
                // keep the running sums exact for the next variables
                lo = rest_lo + solver.domain(x).min();
                hi = rest_hi + solver.domain(x).max();
            }
        }
    }
    return true;
}

PropId post_sum(Solver& solver, std::vector<IntVar> vars, IntVar total)
{
    return solver.post(std::make_unique<Sum>(std::move(vars), total));
}

} // namespace hybridcp
