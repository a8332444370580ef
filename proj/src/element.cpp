#include "hybridcp/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace hybridcp {

Element::Element(IntVar value, std::vector<IntDomain::value_type> table, IntVar index)
    : value_(value), table_(std::move(table)), index_(index)
{
    if (table_.empty()) {
        throw std::invalid_argument("element needs a non-empty table");
    }
}

bool Element::propagate(Solver& solver)
{
    const auto last = static_cast<IntDomain::value_type>(table_.size()) - 1;
    if (!solver.restrict(index_, 0, last)) {
        return false;
    }

    // index keeps i iff table[i] is still a possible value
    const auto& index = solver.domain(index_);
    std::vector<IntDomain::value_type> dead;
    std::vector<IntDomain::value_type> supported;
    for (auto i = index.min(); i <= index.max(); i = index.next(i)) {
        const auto v = table_[static_cast<std::size_t>(i)];
        if (solver.domain(value_).contains(v)) {
            supported.push_back(v);
        } else {
            dead.push_back(i);
        }
    }
    if (supported.empty()) {
        return false;
    }
    for (auto i : dead) {
        if (!solver.remove(index_, i)) {
            return false;
        }
    }

    // value keeps v iff some remaining index points to it
    std::sort(supported.begin(), supported.end());
    supported.erase(std::unique(supported.begin(), supported.end()), supported.end());
    if (!solver.restrict(value_, supported.front(), supported.back())) {
        return false;
    }
    const auto& value = solver.domain(value_);
    if (value.is_enumerated()) {
        std::vector<IntDomain::value_type> unsupported;
        for (auto v = value.min(); v <= value.max(); v = value.next(v)) {
            if (!std::binary_search(supported.begin(), supported.end(), v)) {
                unsupported.push_back(v);
            }
        }
        for (auto v : unsupported) {
            if (!solver.remove(value_, v)) {
                return false;
            }
        }
    }
    return true;
}

PropId post_element(Solver& solver, IntVar value, std::vector<IntDomain::value_type> table,
                    IntVar index)
{
    return solver.post(std::make_unique<Element>(value, std::move(table), index));
}

} // namespace hybridcp
