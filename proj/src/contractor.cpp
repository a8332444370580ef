#include "hybridcp/contractor.hpp"

#include <cmath>

namespace hybridcp {

std::string_view name(ContractStatus s) noexcept
{
    switch (s) {
    case ContractStatus::Fail: return "FAIL";
    case ContractStatus::Entailed: return "ENTAILED";
    case ContractStatus::Contract: return "CONTRACT";
    case ContractStatus::Nothing: return "NOTHING";
    }
    return "?";
}

Contractor::Contractor(std::size_t id, std::vector<Relation> relations, std::size_t arity)
    : id_(id), arity_(arity)
{
    programs_.reserve(relations.size());
    for (auto& r : relations) {
        if (arity_of(r) > arity) {
            throw std::invalid_argument("relation " + to_string(r) +
                                        " references a variable beyond arity " +
                                        std::to_string(arity));
        }
        programs_.emplace_back(std::move(r));
    }
}

namespace {

// Did any component shrink by more than `ratio` of its previous width?
bool significant_shrink(std::span<const Interval> before, std::span<const Interval> after,
                        double ratio)
{
    for (std::size_t i = 0; i < before.size(); ++i) {
        const Interval& old = before[i];
        const Interval& now = after[i];
        const double w_old = old.width();
        const double w_new = now.width();
        if (std::isinf(w_old)) {
            const bool lo_closed = old.lo() == -Interval::kInf && now.lo() != -Interval::kInf;
            const bool hi_closed = old.hi() == Interval::kInf && now.hi() != Interval::kInf;
            if (lo_closed || hi_closed) {
                return true;
            }
            continue;
        }
        if (w_old - w_new > ratio * w_old) {
            return true;
        }
    }
    return false;
}

} // namespace

bool Contractor::fixpoint(std::span<Interval> box, const FixpointOptions& options) const
{
    std::vector<Interval> scratch;
    std::vector<Interval> before(box.begin(), box.end());
    for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
        before.assign(box.begin(), box.end());
        for (const auto& program : programs_) {
            if (!program.revise(box, scratch)) {
                return false;
            }
        }
        if (!significant_shrink(before, box, options.ratio)) {
            break;
        }
    }
    return true;
}

bool Contractor::entailed(std::span<const Interval> box) const
{
    std::vector<Interval> scratch;
    for (const auto& program : programs_) {
        if (!program.entailed(box, scratch)) {
            return false;
        }
    }
    return true;
}

Box fixpoint_contract(const Contractor& c, Box box, const FixpointOptions& options)
{
    if (!c.fixpoint(box, options)) {
        box.assign(box.size(), Interval::empty());
    }
    return box;
}

std::size_t ContractorRegistry::create_contractor(std::span<const std::string> functions,
                                                  std::size_t arity)
{
    std::vector<Relation> relations;
    relations.reserve(functions.size());
    for (const auto& text : functions) {
        relations.push_back(parse(text, arity));
    }
    return create_contractor(std::move(relations), arity);
}

std::size_t ContractorRegistry::create_contractor(std::vector<Relation> relations,
                                                  std::size_t arity)
{
    const std::size_t id = contractors_.size();
    contractors_.emplace_back(id, std::move(relations), arity);
    return id;
}

const Contractor& ContractorRegistry::at(std::size_t cont_index) const
{
    if (cont_index >= contractors_.size()) {
        throw UnknownContractor("unknown contractor " + std::to_string(cont_index) + " (" +
                                std::to_string(contractors_.size()) + " created)");
    }
    return contractors_[cont_index];
}

ContractStatus ContractorRegistry::contract(std::size_t cont_index, std::span<double> bounds) const
{
    const Contractor& c = at(cont_index);
    if (bounds.size() != 2 * c.arity()) {
        throw MalformedBounds("contractor " + std::to_string(cont_index) + " expects " +
                              std::to_string(2 * c.arity()) + " bounds, got " +
                              std::to_string(bounds.size()));
    }
    Box box;
    box.reserve(c.arity());
    for (std::size_t i = 0; i < c.arity(); ++i) {
        const double lo = bounds[2 * i];
        const double hi = bounds[2 * i + 1];
        if (!(lo <= hi) || lo == Interval::kInf || hi == -Interval::kInf) {
            throw MalformedBounds("bounds pair " + std::to_string(i) + " is not an interval");
        }
        box.emplace_back(lo, hi);
    }

    if (!c.fixpoint(box, options_)) {
        return ContractStatus::Fail;
    }

    bool changed = false;
    for (std::size_t i = 0; i < box.size(); ++i) {
        changed = changed || box[i].lo() != bounds[2 * i] || box[i].hi() != bounds[2 * i + 1];
        bounds[2 * i] = box[i].lo();
        bounds[2 * i + 1] = box[i].hi();
    }
    if (c.entailed(box)) {
        return ContractStatus::Entailed;
    }
    return changed ? ContractStatus::Contract : ContractStatus::Nothing;
}

} // namespace hybridcp
