#include "hybridcp/real_bridge.hpp"

#include <stdexcept>

namespace hybridcp {

namespace {

void marshal(const Solver& solver, const std::vector<RealTerm>& scope, std::vector<double>& buffer)
{
    buffer.resize(2 * scope.size());
    for (std::size_t i = 0; i < scope.size(); ++i) {
        const Interval b = solver.bounds(scope[i]);
        buffer[2 * i] = b.lo();
        buffer[2 * i + 1] = b.hi();
    }
}

/// Run one contraction against the live domains and write the result back.
/// Returns false on contradiction.
bool contract_and_write(Solver& solver, std::size_t contractor, const std::vector<RealTerm>& scope,
                        std::vector<double>& buffer)
{
    marshal(solver, scope, buffer);
    const ContractStatus status = solver.contractors().contract(contractor, buffer);
    if (status == ContractStatus::Fail) {
        return false;
    }
    if (status == ContractStatus::Nothing) {
        return true;
    }
    bool rounded = false;
    for (std::size_t i = 0; i < scope.size(); ++i) {
        const double lo = buffer[2 * i];
        const double hi = buffer[2 * i + 1];
        if (solver.update_bounds(scope[i], lo, hi) == BoundsUpdate::Contradiction) {
            return false;
        }
        if (std::holds_alternative<RealView>(scope[i])) {
            const Interval now = solver.bounds(scope[i]);
            rounded |= now.lo() > lo || now.hi() < hi;
        }
    }
    const auto self = solver.current_propagator();
    if (!self) {
        return true;
    }
    if (status == ContractStatus::Entailed) {
        solver.set_passive(*self);
    } else if (rounded) {
        // Integer rounding went past the contractor's output; the own
        // change does not wake this propagator up, so do it here.
        solver.schedule(*self);
    }
    return true;
}

std::string joined(const char* kind, const std::vector<std::string>& functions)
{
    std::string out = kind;
    out += '(';
    for (std::size_t i = 0; i < functions.size(); ++i) {
        if (i != 0) {
            out += "; ";
        }
        out += functions[i];
    }
    out += ')';
    return out;
}

std::vector<IntVar> view_bases(const std::vector<RealTerm>& scope)
{
    std::vector<IntVar> out;
    for (const auto& t : scope) {
        if (const auto* v = std::get_if<RealView>(&t)) {
            out.push_back(v->base);
        }
    }
    return out;
}

std::vector<RealVar> real_vars_of(const std::vector<RealTerm>& scope)
{
    std::vector<RealVar> out;
    for (const auto& t : scope) {
        if (const auto* v = std::get_if<RealVar>(&t)) {
            out.push_back(*v);
        }
    }
    return out;
}

} // namespace

// ---- RealPropagator ------------------------------------------------------------

RealPropagator::RealPropagator(std::size_t contractor, std::vector<RealTerm> scope,
                               std::vector<std::string> functions)
    : contractor_(contractor), scope_(std::move(scope)), functions_(std::move(functions))
{
}

std::string RealPropagator::name() const { return joined("real", functions_); }

std::vector<IntVar> RealPropagator::int_vars() const { return view_bases(scope_); }

std::vector<RealVar> RealPropagator::real_vars() const { return real_vars_of(scope_); }

bool RealPropagator::propagate(Solver& solver)
{
    const bool ok = contract_and_write(solver, contractor_, scope_, buffer_);
    marshalled_ = buffer_.size();
    return ok;
}

std::optional<bool> RealPropagator::entailed(const Solver& solver) const
{
    Box box;
    box.reserve(scope_.size());
    for (const auto& t : scope_) {
        box.push_back(solver.bounds(t));
    }
    return solver.contractors().at(contractor_).entailed(box);
}

// ---- ReifiedRealPropagator -------------------------------------------------------

ReifiedRealPropagator::ReifiedRealPropagator(IntVar b, Contractors contractors,
                                             std::vector<RealTerm> scope,
                                             std::vector<std::string> functions)
    : b_(b), ids_(std::move(contractors)), scope_(std::move(scope)), functions_(std::move(functions))
{
}

std::string ReifiedRealPropagator::name() const { return joined("reified", functions_); }

std::vector<IntVar> ReifiedRealPropagator::int_vars() const
{
    auto out = view_bases(scope_);
    out.push_back(b_);
    return out;
}

std::vector<RealVar> ReifiedRealPropagator::real_vars() const { return real_vars_of(scope_); }

bool ReifiedRealPropagator::fails(const Solver& solver, std::size_t contractor)
{
    marshal(solver, scope_, buffer_);
    return solver.contractors().contract(contractor, buffer_) == ContractStatus::Fail;
}

// ENTAILED from contract() only speaks about the contracted box; deciding b
// needs the relation to hold on the current one.
bool ReifiedRealPropagator::holds(const Solver& solver, std::size_t contractor) const
{
    Box box;
    box.reserve(scope_.size());
    for (const auto& t : scope_) {
        box.push_back(solver.bounds(t));
    }
    return solver.contractors().at(contractor).entailed(box);
}

bool ReifiedRealPropagator::enforce(Solver& solver, std::size_t contractor)
{
    return contract_and_write(solver, contractor, scope_, buffer_);
}

bool ReifiedRealPropagator::enforce_negation(Solver& solver)
{
    std::vector<std::size_t> undecided;
    for (std::size_t i = 0; i < ids_.positive.size(); ++i) {
        if (fails(solver, ids_.positive[i])) {
            // relation i can no longer hold: the negation is satisfied
            if (auto self = solver.current_propagator()) {
                solver.set_passive(*self);
            }
            return true;
        }
        if (!holds(solver, ids_.positive[i])) {
            undecided.push_back(i);
        }
    }
    if (undecided.empty()) {
        return false;
    }
    if (undecided.size() == 1) {
        return enforce(solver, ids_.negated[undecided.front()]);
    }
    return true;
}

bool ReifiedRealPropagator::propagate(Solver& solver)
{
    const auto& b = solver.domain(b_);
    if (b.is_fixed()) {
        return b.min() == 1 ? enforce(solver, ids_.conjunction) : enforce_negation(solver);
    }
    if (fails(solver, ids_.conjunction)) {
        return solver.fix(b_, 0) && enforce_negation(solver);
    }
    if (holds(solver, ids_.conjunction)) {
        return solver.fix(b_, 1) && enforce(solver, ids_.conjunction);
    }
    if (ids_.negated.size() == 1) {
        if (fails(solver, ids_.negated.front())) {
            return solver.fix(b_, 1) && enforce(solver, ids_.conjunction);
        }
        if (holds(solver, ids_.negated.front())) {
            return solver.fix(b_, 0) && enforce_negation(solver);
        }
    }
    return true;
}

// ---- posting ---------------------------------------------------------------------

PropId post_real(Solver& solver, std::vector<std::string> functions, std::vector<RealTerm> scope)
{
    if (functions.empty()) {
        throw std::invalid_argument("a real constraint needs at least one function");
    }
    const auto id = solver.contractors().create_contractor(functions, scope.size());
    return solver.post(std::make_unique<RealPropagator>(id, std::move(scope), std::move(functions)));
}

PropId post_reified(Solver& solver, IntVar b, std::vector<std::string> functions,
                    std::vector<RealTerm> scope)
{
    if (functions.empty()) {
        throw std::invalid_argument("a reified constraint needs at least one function");
    }
    const auto& d = solver.domain(b);
    if (d.min() < 0 || d.max() > 1) {
        throw std::invalid_argument("reification variable '" + solver.name(b) +
                                    "' must have a domain within {0, 1}");
    }
    std::vector<Relation> relations;
    for (const auto& f : functions) {
        relations.push_back(parse(f, scope.size()));
        if (!is_inequality(relations.back().op)) {
            throw std::invalid_argument("cannot reify the equation \"" + f +
                                        "\": only inequalities have a negation");
        }
    }
    auto& registry = solver.contractors();
    ReifiedRealPropagator::Contractors ids;
    ids.conjunction = registry.create_contractor(relations, scope.size());
    for (const auto& r : relations) {
        ids.positive.push_back(registry.create_contractor(std::vector<Relation>{r}, scope.size()));
        ids.negated.push_back(registry.create_contractor(std::vector<Relation>{negate(r)}, scope.size()));
    }
    return solver.post(std::make_unique<ReifiedRealPropagator>(b, std::move(ids), std::move(scope),
                                                               std::move(functions)));
}

} // namespace hybridcp
