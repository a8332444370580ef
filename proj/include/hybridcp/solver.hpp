#ifndef HYBRIDCP_SOLVER_HPP
#define HYBRIDCP_SOLVER_HPP

#include "hybridcp/contractor.hpp"
#include "hybridcp/domain.hpp"
#include "hybridcp/interval.hpp"

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hybridcp {

struct IntVar {
    std::uint32_t id = 0;
    friend auto operator<=>(const IntVar&, const IntVar&) = default;
};

struct RealVar {
    std::uint32_t id = 0;
    friend auto operator<=>(const RealVar&, const RealVar&) = default;
};

/// An integer variable seen as a real one. Reads give the exact conversion
/// of the integer bounds; writes round inward (ceil / floor).
struct RealView {
    IntVar base;
    double precision = 1e-4;
};

/// Anything that can sit in the scope of a continuous constraint.
using RealTerm = std::variant<RealVar, RealView>;

using PropId = std::uint32_t;

class Solver;

/**
 * A filtering procedure. `propagate` returns false on contradiction; it may
 * only shrink domains, through the Solver modification methods.
 */
class Propagator {
public:
    virtual ~Propagator() = default;

    virtual std::string name() const = 0;
    virtual std::vector<IntVar> int_vars() const = 0;
    virtual std::vector<RealVar> real_vars() const { return {}; }
    virtual bool propagate(Solver& solver) = 0;
    /// Whether the constraint is proven to hold on the current domains, when
    /// the propagator can tell. Used to audit passive propagators.
    virtual std::optional<bool> entailed(const Solver&) const { return std::nullopt; }
};

enum class BoundsUpdate { Unchanged, Changed, Contradiction };

struct Solution {
    std::vector<IntDomain::value_type> ints;
    std::vector<Interval> reals;
};

struct SearchLimits {
    std::optional<std::uint64_t> nodes;
    std::optional<std::chrono::milliseconds> time;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t fails = 0;
    std::uint64_t solutions = 0;
    std::uint64_t max_depth = 0;
};

enum class SearchStatus { Complete, LimitReached, Stopped };

/// Return false to stop the search.
using SolutionCallback = std::function<bool(const Solution&)>;

using Objective = std::variant<IntVar, RealVar>;

enum class OptimizationStatus { Optimal, Unsatisfiable, LimitWithSolution, LimitNoSolution };

struct OptimizationResult {
    OptimizationStatus status = OptimizationStatus::Unsatisfiable;
    std::optional<Solution> best;
    std::uint64_t improvements = 0;
};

/// Outcome of the backtrack-integrity checks made in verify mode.
struct VerifyReport {
    std::uint64_t restorations_checked = 0;
    std::uint64_t restoration_mismatches = 0;
    std::uint64_t passive_checks = 0;
    std::uint64_t passive_violations = 0;
};

/// A branching decision: x = v / x != v for integers, [lo, mid] / [mid, hi]
/// for reals.
struct Decision {
    std::variant<IntVar, RealVar> var;
    IntDomain::value_type value = 0;
    double mid = 0.0;
};

/**
 * Finite-domain store with real variables, a propagation queue, a trail and
 * depth-first search.
 *
 * Every domain change goes through the modification methods, which record
 * the previous state on the trail and schedule the propagators watching the
 * variable (except the one currently running). Popping a level restores the
 * exact state it had when pushed.
 */
class Solver {
public:
    explicit Solver(FixpointOptions contractor_options = {});

    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    // ---- model ----------------------------------------------------------
    IntVar make_int(std::string name, IntDomain domain);
    /// Bounds must be finite and precision positive.
    RealVar make_real(std::string name, double lb, double ub, double precision);

    std::size_t num_ints() const noexcept { return ints_.size(); }
    std::size_t num_reals() const noexcept { return reals_.size(); }
    const IntDomain& domain(IntVar x) const { return ints_.at(x.id).domain; }
    const std::string& name(IntVar x) const { return ints_.at(x.id).name; }
    const std::string& name(RealVar x) const { return reals_.at(x.id).name; }
    Interval bounds(RealVar x) const;
    Interval bounds(const RealTerm& t) const;
    double precision(RealVar x) const { return reals_.at(x.id).precision; }
    bool is_instantiated(RealVar x) const;

    ContractorRegistry& contractors() noexcept { return registry_; }
    const ContractorRegistry& contractors() const noexcept { return registry_; }

    PropId post(std::unique_ptr<Propagator> p);
    std::size_t num_propagators() const noexcept { return props_.size(); }
    Propagator& propagator(PropId id) { return *props_.at(id); }
    const Propagator& propagator(PropId id) const { return *props_.at(id); }

    // ---- domain modification (trailed) -----------------------------------
    bool restrict(IntVar x, IntDomain::value_type lb, IntDomain::value_type ub);
    bool remove(IntVar x, IntDomain::value_type v);
    bool fix(IntVar x, IntDomain::value_type v);
    BoundsUpdate update_bounds(RealVar x, double lb, double ub);
    /// Views round inward: the base becomes [ceil(lb), floor(ub)].
    BoundsUpdate update_bounds(const RealTerm& t, double lb, double ub);

    // ---- propagation -----------------------------------------------------
    void schedule(PropId id);
    void schedule_all();
    void schedule_all(std::span<const PropId> order);
    /// Run scheduled propagators to a fixpoint. False on contradiction (the
    /// queue is then cleared).
    bool propagate();
    bool is_passive(PropId id) const { return passive_.at(id); }
    /// Silence a propagator until the current level is popped.
    void set_passive(PropId id);
    std::optional<PropId> current_propagator() const noexcept { return current_; }

    // ---- trail -----------------------------------------------------------
    void push_level();
    void pop_level();
    std::size_t level() const noexcept { return levels_.size(); }

    // ---- search ----------------------------------------------------------
    /// Variables branched on first (first-fail, ties by id); remaining
    /// integer variables and then reals are branched on afterwards.
    void set_decision_vars(std::vector<IntVar> vars) { decisions_ = std::move(vars); }
    const std::vector<IntVar>& decision_vars() const noexcept { return decisions_; }

    std::optional<Decision> next_decision() const;

    /// Enumerate solutions depth-first. The store is back at its initial
    /// state when this returns.
    SearchStatus solve(const SolutionCallback& on_solution, const SearchLimits& limits = {});

    /// Branch and bound: each solution with objective upper bound v adds the
    /// cut objective <= v - delta (delta = precision for reals, 1 for
    /// integers). `on_improvement` sees every improving solution.
    OptimizationResult minimize(Objective objective, const SolutionCallback& on_improvement = {},
                                const SearchLimits& limits = {});

    const SearchStats& stats() const noexcept { return stats_; }
    Solution snapshot_solution() const;

    // ---- verification ----------------------------------------------------
    /// Snapshot the full state at every push and compare after every pop;
    /// re-check passive real propagators at every node.
    void set_verify(bool on) noexcept { verify_ = on; }
    const VerifyReport& verify_report() const noexcept { return verify_report_; }

private:
    struct IntEntry {
        std::string name;
        IntDomain domain;
    };
    struct RealEntry {
        std::string name;
        double lo;
        double hi;
        double precision;
    };

    struct IntRestore {
        std::uint32_t var;
        IntDomain::value_type lb;
        IntDomain::value_type ub;
        std::uint64_t size;
    };
    struct IntValueRestore {
        std::uint32_t var;
        IntDomain::value_type value;
    };
    struct RealRestore {
        std::uint32_t var;
        double lo;
        double hi;
    };
    struct PassiveRestore {
        PropId prop;
    };
    using TrailEntry = std::variant<IntRestore, IntValueRestore, RealRestore, PassiveRestore>;

    struct StateSnapshot {
        std::vector<IntDomain> ints;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> reals;
        std::vector<bool> passive;
        friend bool operator==(const StateSnapshot&, const StateSnapshot&) = default;
    };

    void notify_int(std::uint32_t var);
    void notify_real(std::uint32_t var);
    void clear_queue();
    bool apply(const Decision& d, bool left);
    void dfs(std::size_t depth, const SolutionCallback& on_solution, const SearchLimits& limits);
    bool limit_reached(const SearchLimits& limits);
    StateSnapshot capture() const;
    void check_passive();

    FixpointOptions options_;
    ContractorRegistry registry_;

    std::vector<IntEntry> ints_;
    std::vector<RealEntry> reals_;
    std::vector<std::vector<PropId>> int_watchers_;
    std::vector<std::vector<PropId>> real_watchers_;

    std::vector<std::unique_ptr<Propagator>> props_;
    std::vector<bool> passive_;
    std::vector<bool> scheduled_;
    std::deque<PropId> queue_;
    std::optional<PropId> current_;

    std::vector<TrailEntry> trail_;
    std::vector<std::size_t> levels_;

    std::vector<IntVar> decisions_;
    SearchStats stats_;
    bool stop_ = false;
    bool limit_hit_ = false;
    std::chrono::steady_clock::time_point start_;

    // branch and bound
    std::optional<PropId> cut_;
    std::optional<Objective> objective_;
    double cut_bound_ = Interval::kInf;

    bool verify_ = false;
    VerifyReport verify_report_;
    std::vector<StateSnapshot> snapshots_;

    friend class ObjectiveCut;
};

/// First-fail, in-domain-min: the unfixed variable with the smallest domain
/// (ties: smallest id) and its minimum value.
std::optional<Decision> select_first_fail(const Solver& solver, std::span<const IntVar> vars);

/// The non-instantiated real with the largest (ub - lb) / max(1, |mid|),
/// split at mid = lb + (ub - lb) / 2.
std::optional<Decision> branch_real(const Solver& solver, std::span<const RealVar> vars);

} // namespace hybridcp

#endif // HYBRIDCP_SOLVER_HPP
