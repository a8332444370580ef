#include "hybridcp/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hybridcp {

/// Branch-and-bound cut: objective <= best - delta. Always scheduled while
/// an optimization is running.
class ObjectiveCut final : public Propagator {
public:
    std::string name() const override { return "objective_cut"; }
    std::vector<IntVar> int_vars() const override { return {}; }

    bool propagate(Solver& s) override
    {
        if (!s.objective_ || s.cut_bound_ == Interval::kInf) {
            return true;
        }
        if (const auto* x = std::get_if<IntVar>(&*s.objective_)) {
            const auto& d = s.domain(*x);
            const double bound = std::floor(s.cut_bound_);
            if (bound < static_cast<double>(d.min())) {
                return false;
            }
            if (bound >= static_cast<double>(d.max())) {
                return true;
            }
            return s.restrict(*x, d.min(), static_cast<IntDomain::value_type>(bound));
        }
        const auto x = std::get<RealVar>(*s.objective_);
        return s.update_bounds(x, -Interval::kInf, s.cut_bound_) != BoundsUpdate::Contradiction;
    }
};

Solver::Solver(FixpointOptions contractor_options)
    : options_(contractor_options), registry_(contractor_options)
{
}

IntVar Solver::make_int(std::string name, IntDomain domain)
{
    if (level() != 0) {
        throw std::logic_error("variables must be created at the root level");
    }
    ints_.push_back({std::move(name), std::move(domain)});
    int_watchers_.emplace_back();
    return IntVar{static_cast<std::uint32_t>(ints_.size() - 1)};
}

RealVar Solver::make_real(std::string name, double lb, double ub, double precision)
{
    if (level() != 0) {
        throw std::logic_error("variables must be created at the root level");
    }
    if (!std::isfinite(lb) || !std::isfinite(ub) || lb > ub) {
        throw std::invalid_argument("real variable '" + name + "' needs finite bounds lb <= ub");
    }
    if (!(precision > 0.0) || !std::isfinite(precision)) {
        throw std::invalid_argument("real variable '" + name + "' needs a positive precision");
    }
    reals_.push_back({std::move(name), lb, ub, precision});
    real_watchers_.emplace_back();
    return RealVar{static_cast<std::uint32_t>(reals_.size() - 1)};
}

Interval Solver::bounds(RealVar x) const
{
    const auto& r = reals_.at(x.id);
    return Interval(r.lo, r.hi);
}

Interval Solver::bounds(const RealTerm& t) const
{
    if (const auto* x = std::get_if<RealVar>(&t)) {
        return bounds(*x);
    }
    const auto& d = domain(std::get<RealView>(t).base);
    // Integers beyond 2^53 may not be exact doubles; round those outward.
    constexpr double kExact = 0x1p53;
    double lo = static_cast<double>(d.min());
    double hi = static_cast<double>(d.max());
    if (std::fabs(lo) > kExact) {
        lo = std::nextafter(lo, -Interval::kInf);
    }
    if (std::fabs(hi) > kExact) {
        hi = std::nextafter(hi, Interval::kInf);
    }
    return Interval(lo, hi);
}

bool Solver::is_instantiated(RealVar x) const
{
    const auto& r = reals_.at(x.id);
    return r.hi - r.lo <= r.precision;
}

PropId Solver::post(std::unique_ptr<Propagator> p)
{
    if (level() != 0) {
        throw std::logic_error("propagators must be posted at the root level");
    }
    const auto id = static_cast<PropId>(props_.size());
    for (IntVar x : p->int_vars()) {
        auto& w = int_watchers_.at(x.id);
        if (std::find(w.begin(), w.end(), id) == w.end()) {
            w.push_back(id);
        }
    }
    for (RealVar x : p->real_vars()) {
        auto& w = real_watchers_.at(x.id);
        if (std::find(w.begin(), w.end(), id) == w.end()) {
            w.push_back(id);
        }
    }
    props_.push_back(std::move(p));
    passive_.push_back(false);
    scheduled_.push_back(false);
    schedule(id);
    return id;
}

// ---- modification ----------------------------------------------------------

bool Solver::restrict(IntVar x, IntDomain::value_type lb, IntDomain::value_type ub)
{
    auto& d = ints_.at(x.id).domain;
    const IntRestore rec{x.id, d.min(), d.max(), d.size()};
    switch (d.restrict_bounds(lb, ub)) {
    case DomainChange::Emptied:
        return false;
    case DomainChange::Unchanged:
        return true;
    case DomainChange::Changed:
        break;
    }
    trail_.emplace_back(rec);
    notify_int(x.id);
    return true;
}

bool Solver::remove(IntVar x, IntDomain::value_type v)
{
    auto& d = ints_.at(x.id).domain;
    const IntRestore rec{x.id, d.min(), d.max(), d.size()};
    switch (d.remove(v)) {
    case DomainChange::Emptied:
        return false;
    case DomainChange::Unchanged:
        return true;
    case DomainChange::Changed:
        break;
    }
    trail_.emplace_back(rec);
    if (d.is_enumerated()) {
        trail_.emplace_back(IntValueRestore{x.id, v});
    }
    notify_int(x.id);
    return true;
}

bool Solver::fix(IntVar x, IntDomain::value_type v)
{
    if (!domain(x).contains(v)) {
        return false;
    }
    return restrict(x, v, v);
}

BoundsUpdate Solver::update_bounds(RealVar x, double lb, double ub)
{
    auto& r = reals_.at(x.id);
    const double lo = std::isnan(lb) ? r.lo : std::max(lb, r.lo);
    const double hi = std::isnan(ub) ? r.hi : std::min(ub, r.hi);
    if (lo > hi) {
        return BoundsUpdate::Contradiction;
    }
    if (lo == r.lo && hi == r.hi) {
        return BoundsUpdate::Unchanged;
    }
    trail_.emplace_back(RealRestore{x.id, r.lo, r.hi});
    const double old_width = r.hi - r.lo;
    r.lo = lo;
    r.hi = hi;
    // Only a significant shrink wakes the watchers up.
    if (old_width - (hi - lo) > options_.ratio * old_width) {
        notify_real(x.id);
    }
    return BoundsUpdate::Changed;
}

BoundsUpdate Solver::update_bounds(const RealTerm& t, double lb, double ub)
{
    if (const auto* x = std::get_if<RealVar>(&t)) {
        return update_bounds(*x, lb, ub);
    }
    const IntVar base = std::get<RealView>(t).base;
    const auto& d = domain(base);
    auto new_lb = d.min();
    auto new_ub = d.max();
    if (!std::isnan(lb) && lb > static_cast<double>(d.min())) {
        if (lb > static_cast<double>(d.max())) {
            return BoundsUpdate::Contradiction;
        }
        new_lb = static_cast<IntDomain::value_type>(std::ceil(lb));
    }
    if (!std::isnan(ub) && ub < static_cast<double>(d.max())) {
        if (ub < static_cast<double>(d.min())) {
            return BoundsUpdate::Contradiction;
        }
        new_ub = static_cast<IntDomain::value_type>(std::floor(ub));
    }
    if (new_lb > new_ub) {
        return BoundsUpdate::Contradiction;
    }
    const auto before = d.size();
    if (!restrict(base, new_lb, new_ub)) {
        return BoundsUpdate::Contradiction;
    }
    return domain(base).size() == before ? BoundsUpdate::Unchanged : BoundsUpdate::Changed;
}

// ---- propagation -------------------------------------------------------------

void Solver::notify_int(std::uint32_t var)
{
    for (PropId p : int_watchers_[var]) {
        if (p != current_ && !passive_[p]) {
            schedule(p);
        }
    }
}

void Solver::notify_real(std::uint32_t var)
{
    for (PropId p : real_watchers_[var]) {
        if (p != current_ && !passive_[p]) {
            schedule(p);
        }
    }
}

void Solver::schedule(PropId id)
{
    if (!scheduled_.at(id)) {
        scheduled_[id] = true;
        queue_.push_back(id);
    }
}

void Solver::schedule_all()
{
    for (PropId id = 0; id < props_.size(); ++id) {
        schedule(id);
    }
}

void Solver::schedule_all(std::span<const PropId> order)
{
    for (PropId id : order) {
        schedule(id);
    }
}

void Solver::clear_queue()
{
    for (PropId p : queue_) {
        scheduled_[p] = false;
    }
    queue_.clear();
}

bool Solver::propagate()
{
    if (cut_ && objective_) {
        schedule(*cut_);
    }
    while (!queue_.empty()) {
        const PropId id = queue_.front();
        queue_.pop_front();
        scheduled_[id] = false;
        if (passive_[id]) {
            continue;
        }
        current_ = id;
        const bool ok = props_[id]->propagate(*this);
        current_.reset();
        if (!ok) {
            clear_queue();
            return false;
        }
    }
    return true;
}

void Solver::set_passive(PropId id)
{
    if (!passive_.at(id)) {
        passive_[id] = true;
        trail_.emplace_back(PassiveRestore{id});
    }
}

// ---- trail -------------------------------------------------------------------

void Solver::push_level()
{
    levels_.push_back(trail_.size());
    if (verify_) {
        snapshots_.push_back(capture());
    }
}

void Solver::pop_level()
{
    if (levels_.empty()) {
        throw std::logic_error("pop_level at the root");
    }
    const std::size_t mark = levels_.back();
    levels_.pop_back();
    while (trail_.size() > mark) {
        std::visit(
            [this](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, IntRestore>) {
                    ints_[e.var].domain.restore_bounds(e.lb, e.ub, e.size);
                } else if constexpr (std::is_same_v<T, IntValueRestore>) {
                    ints_[e.var].domain.restore_value(e.value);
                } else if constexpr (std::is_same_v<T, RealRestore>) {
                    reals_[e.var].lo = e.lo;
                    reals_[e.var].hi = e.hi;
                } else {
                    passive_[e.prop] = false;
                }
            },
            trail_.back());
        trail_.pop_back();
    }
    clear_queue();
    if (verify_ && !snapshots_.empty()) {
        ++verify_report_.restorations_checked;
        if (!(capture() == snapshots_.back())) {
            ++verify_report_.restoration_mismatches;
        }
        snapshots_.pop_back();
    }
}

Solver::StateSnapshot Solver::capture() const
{
    StateSnapshot s;
    s.ints.reserve(ints_.size());
    for (const auto& e : ints_) {
        s.ints.push_back(e.domain);
    }
    s.reals.reserve(reals_.size());
    for (const auto& r : reals_) {
        s.reals.emplace_back(std::bit_cast<std::uint64_t>(r.lo), std::bit_cast<std::uint64_t>(r.hi));
    }
    s.passive = passive_;
    return s;
}

void Solver::check_passive()
{
    for (PropId p = 0; p < props_.size(); ++p) {
        if (!passive_[p]) {
            continue;
        }
        if (auto e = props_[p]->entailed(*this)) {
            ++verify_report_.passive_checks;
            if (!*e) {
                ++verify_report_.passive_violations;
            }
        }
    }
}

// ---- search ------------------------------------------------------------------

std::optional<Decision> select_first_fail(const Solver& solver, std::span<const IntVar> vars)
{
    std::optional<IntVar> best;
    for (IntVar x : vars) {
        const auto& d = solver.domain(x);
        if (d.is_fixed()) {
            continue;
        }
        if (!best) {
            best = x;
            continue;
        }
        const auto& b = solver.domain(*best);
        if (d.size() < b.size() || (d.size() == b.size() && x.id < best->id)) {
            best = x;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return Decision{*best, solver.domain(*best).min(), 0.0};
}

std::optional<Decision> branch_real(const Solver& solver, std::span<const RealVar> vars)
{
    std::optional<RealVar> best;
    double best_score = -1.0;
    for (RealVar x : vars) {
        if (solver.is_instantiated(x)) {
            continue;
        }
        const Interval b = solver.bounds(x);
        const double mid = b.lo() + (b.hi() - b.lo()) / 2;
        if (!(b.lo() < mid && mid < b.hi())) {
            continue; // cannot be split any further
        }
        const double score = (b.hi() - b.lo()) / std::max(1.0, std::fabs(mid));
        if (score > best_score) {
            best_score = score;
            best = x;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    const Interval b = solver.bounds(*best);
    return Decision{*best, 0, b.lo() + (b.hi() - b.lo()) / 2};
}

std::optional<Decision> Solver::next_decision() const
{
    if (auto d = select_first_fail(*this, decisions_)) {
        return d;
    }
    std::vector<IntVar> rest;
    for (std::uint32_t i = 0; i < ints_.size(); ++i) {
        rest.push_back(IntVar{i});
    }
    if (auto d = select_first_fail(*this, rest)) {
        return d;
    }
    std::vector<RealVar> reals;
    for (std::uint32_t i = 0; i < reals_.size(); ++i) {
        reals.push_back(RealVar{i});
    }
    return branch_real(*this, reals);
}

bool Solver::apply(const Decision& d, bool left)
{
    if (const auto* x = std::get_if<IntVar>(&d.var)) {
        return left ? fix(*x, d.value) : remove(*x, d.value);
    }
    const auto x = std::get<RealVar>(d.var);
    const Interval b = bounds(x);
    const auto r = left ? update_bounds(x, b.lo(), d.mid) : update_bounds(x, d.mid, b.hi());
    return r != BoundsUpdate::Contradiction;
}

bool Solver::limit_reached(const SearchLimits& limits)
{
    if (limits.nodes && stats_.nodes >= *limits.nodes) {
        return true;
    }
    if (limits.time && std::chrono::steady_clock::now() - start_ >= *limits.time) {
        return true;
    }
    return false;
}

Solution Solver::snapshot_solution() const
{
    Solution s;
    s.ints.reserve(ints_.size());
    for (const auto& e : ints_) {
        s.ints.push_back(e.domain.min());
    }
    s.reals.reserve(reals_.size());
    for (const auto& r : reals_) {
        s.reals.emplace_back(r.lo, r.hi);
    }
    return s;
}

void Solver::dfs(std::size_t depth, const SolutionCallback& on_solution, const SearchLimits& limits)
{
    ++stats_.nodes;
    stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, depth);
    if (verify_) {
        check_passive();
    }
    const auto d = next_decision();
    if (!d) {
        ++stats_.solutions;
        if (on_solution && !on_solution(snapshot_solution())) {
            stop_ = true;
        }
        return;
    }
    for (bool left : {true, false}) {
        if (limit_reached(limits)) {
            limit_hit_ = true;
            return;
        }
        push_level();
        if (apply(*d, left) && propagate()) {
            dfs(depth + 1, on_solution, limits);
        } else {
            ++stats_.fails;
        }
        pop_level();
        if (stop_ || limit_hit_) {
            return;
        }
    }
}

SearchStatus Solver::solve(const SolutionCallback& on_solution, const SearchLimits& limits)
{
    if (level() != 0) {
        throw std::logic_error("solve must start at the root level");
    }
    stats_ = {};
    stop_ = false;
    limit_hit_ = false;
    start_ = std::chrono::steady_clock::now();

    push_level();
    schedule_all();
    if (propagate()) {
        dfs(0, on_solution, limits);
    } else {
        ++stats_.nodes;
        ++stats_.fails;
    }
    pop_level();

    if (limit_hit_) {
        return SearchStatus::LimitReached;
    }
    return stop_ ? SearchStatus::Stopped : SearchStatus::Complete;
}

OptimizationResult Solver::minimize(Objective objective, const SolutionCallback& on_improvement,
                                    const SearchLimits& limits)
{
    if (!cut_) {
        cut_ = post(std::make_unique<ObjectiveCut>());
    }
    objective_ = objective;
    cut_bound_ = Interval::kInf;

    OptimizationResult result;
    const auto on_solution = [&](const Solution& s) {
        result.best = s;
        ++result.improvements;
        if (const auto* x = std::get_if<IntVar>(&objective)) {
            cut_bound_ = static_cast<double>(s.ints[x->id]) - 1.0;
        } else {
            const auto r = std::get<RealVar>(objective);
            cut_bound_ = s.reals[r.id].hi() - precision(r);
        }
        return !on_improvement || on_improvement(s);
    };

    SearchStatus status;
    try {
        status = solve(on_solution, limits);
    } catch (...) {
        objective_.reset();
        cut_bound_ = Interval::kInf;
        throw;
    }
    objective_.reset();
    cut_bound_ = Interval::kInf;

    switch (status) {
    case SearchStatus::Complete:
        result.status = result.best ? OptimizationStatus::Optimal : OptimizationStatus::Unsatisfiable;
        break;
    case SearchStatus::LimitReached:
    case SearchStatus::Stopped:
        result.status = result.best ? OptimizationStatus::LimitWithSolution
                                    : OptimizationStatus::LimitNoSolution;
        break;
    }
    return result;
}

} // namespace hybridcp
