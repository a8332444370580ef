#include "hybridcp/constraints.hpp"
#include "hybridcp/real_bridge.hpp"
#include "hybridcp/solver.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <stdexcept>

using namespace hybridcp;

namespace {

bool root_propagate(Solver& s)
{
    s.schedule_all();
    return s.propagate();
}

// Counts its own calls; watches one real variable.
class Probe final : public Propagator {
public:
    explicit Probe(RealVar x, int& calls) : x_(x), calls_(calls) {}
    std::string name() const override { return "probe"; }
    std::vector<IntVar> int_vars() const override { return {}; }
    std::vector<RealVar> real_vars() const override { return {x_}; }
    bool propagate(Solver&) override
    {
        ++calls_;
        return true;
    }

private:
    RealVar x_;
    int& calls_;
};

} // namespace

TEST_CASE("real propagation examples", "[real]")
{
    {
        Solver s;
        const RealVar x = s.make_real("x", 0, 10, 1e-4);
        const RealVar y = s.make_real("y", 0, 3, 1e-4);
        const PropId id = post_real(s, {"{0}+{1}=10"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.bounds(x) == Interval(7, 10));
        CHECK(s.bounds(y) == Interval(0, 3));
        const auto& p = dynamic_cast<const RealPropagator&>(s.propagator(id));
        CHECK(p.last_marshalled() == 4);
        CHECK(p.name().find("{0}+{1}=10") != std::string::npos);
    }
    {
        Solver s;
        const RealVar x = s.make_real("x", 0, 1, 1e-4);
        const RealVar y = s.make_real("y", 2, 3, 1e-4);
        const PropId id = post_real(s, {"{0}<{1}"}, {x, y});
        s.push_level();
        REQUIRE(root_propagate(s));
        CHECK(s.is_passive(id));
        s.pop_level();
        CHECK_FALSE(s.is_passive(id));
    }
    {
        Solver s;
        const RealVar x = s.make_real("x", 0, 1, 1e-4);
        const RealVar y = s.make_real("y", 2, 3, 1e-4);
        post_real(s, {"{0}={1}"}, {x, y});
        CHECK_FALSE(root_propagate(s));
    }
    {
        Solver s;
        const RealVar x = s.make_real("x", 0, 1, 1e-4);
        CHECK_THROWS_AS(post_real(s, {"{1}=1"}, {x}), ParseError);
        CHECK(s.num_propagators() == 0);
    }
}

TEST_CASE("update_bounds on real variables and views", "[real][view]")
{
    Solver s;
    const RealVar r = s.make_real("r", 5, 24, 1e-4);
    CHECK(s.update_bounds(r, 16.2, 23.7) == BoundsUpdate::Changed);
    CHECK(s.bounds(r) == Interval(16.2, 23.7));
    CHECK(s.update_bounds(r, 0, 100) == BoundsUpdate::Unchanged);
    CHECK(s.update_bounds(r, 24, 25) == BoundsUpdate::Contradiction);
    CHECK(s.bounds(r) == Interval(16.2, 23.7));

    const IntVar p = s.make_int("p", IntDomain::bounded(5, 24));
    const RealView v{p, 1e-4};
    CHECK(s.bounds(RealTerm(v)) == Interval(5, 24));
    CHECK(s.update_bounds(RealTerm(v), 16.2, 23.7) == BoundsUpdate::Changed);
    CHECK(s.domain(p).min() == 17);
    CHECK(s.domain(p).max() == 23);
    CHECK(s.bounds(RealTerm(v)) == Interval(17, 23));
    CHECK(s.update_bounds(RealTerm(v), 16.5, 23.5) == BoundsUpdate::Unchanged);

    const IntVar q = s.make_int("q", IntDomain::bounded(5, 5));
    CHECK(s.update_bounds(RealTerm(RealView{q}), 5.2, 5.9) == BoundsUpdate::Contradiction);
    CHECK(s.domain(q).min() == 5);

    // holes of an enumerated base are skipped when rounding inward
    const IntVar e = s.make_int("e", IntDomain::enumerated({5, 11, 17, 23, 24}));
    CHECK(s.update_bounds(RealTerm(RealView{e}), 11.5, 23.9) == BoundsUpdate::Changed);
    CHECK(s.domain(e).values() == std::vector<IntDomain::value_type>{17, 23});
}

TEST_CASE("small real shrinks do not wake watchers", "[real]")
{
    Solver s;
    const RealVar x = s.make_real("x", 0, 100, 1e-4);
    int calls = 0;
    s.post(std::make_unique<Probe>(x, calls));
    REQUIRE(root_propagate(s));
    CHECK(calls == 1);
    CHECK(s.update_bounds(x, 0.5, 100) == BoundsUpdate::Changed);
    REQUIRE(s.propagate());
    CHECK(calls == 1);
    CHECK(s.update_bounds(x, 10, 100) == BoundsUpdate::Changed);
    REQUIRE(s.propagate());
    CHECK(calls == 2);
}

TEST_CASE("branch_real picks the widest relative width", "[real][search]")
{
    Solver s;
    const RealVar a = s.make_real("a", 0, 8, 1e-4);
    auto d = branch_real(s, std::vector<RealVar>{a});
    REQUIRE(d);
    CHECK(std::get<RealVar>(d->var) == a);
    CHECK(d->mid == 4);

    const RealVar big = s.make_real("big", 1000, 1100, 1e-4);
    const RealVar small = s.make_real("small", 0, 2, 1e-4);
    d = branch_real(s, std::vector<RealVar>{big, small});
    CHECK(std::get<RealVar>(d->var) == small);

    const RealVar tight = s.make_real("tight", 1, 1 + 5e-5, 1e-4);
    CHECK_FALSE(branch_real(s, std::vector<RealVar>{tight}));
    CHECK(s.is_instantiated(tight));
}

TEST_CASE("real branching encloses a root", "[real][search]")
{
    Solver s;
    const RealVar x = s.make_real("x", 0, 2, 1e-6);
    post_real(s, {"{0}*{0}=2"}, {x});
    std::vector<Interval> boxes;
    CHECK(s.solve([&](const Solution& sol) {
        boxes.push_back(sol.reals[0]);
        return true;
    }) == SearchStatus::Complete);
    REQUIRE_FALSE(boxes.empty());
    bool covered = false;
    for (const Interval& b : boxes) {
        CHECK(b.width() <= 1e-6);
        CHECK(std::abs(b.mid() - std::sqrt(2.0)) < 1e-5);
        covered = covered || b.contains(std::sqrt(2.0));
    }
    CHECK(covered);
}

TEST_CASE("reification examples", "[real][reify]")
{
    {
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(0, 1));
        const RealVar x = s.make_real("x", 0, 1, 1e-4);
        const RealVar y = s.make_real("y", 2, 3, 1e-4);
        post_reified(s, b, {"{0}<{1}"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.domain(b).values() == std::vector<IntDomain::value_type>{1});
    }
    {
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(0, 1));
        const RealVar x = s.make_real("x", 5, 6, 1e-4);
        const RealVar y = s.make_real("y", 0, 1, 1e-4);
        post_reified(s, b, {"{0}<{1}"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.domain(b).values() == std::vector<IntDomain::value_type>{0});
    }
    {
        // holds on part of the box only: b stays free and nothing is pruned
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(0, 1));
        const RealVar x = s.make_real("x", 0, 10, 1e-4);
        const RealVar y = s.make_real("y", 5, 5, 1e-4);
        post_reified(s, b, {"{0}<={1}"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.domain(b).size() == 2);
        CHECK(s.bounds(x) == Interval(0, 10));
    }
    {
        // b = 0 enforces the negation {0} > {1}
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(0, 0));
        const RealVar x = s.make_real("x", 0, 10, 1e-4);
        const RealVar y = s.make_real("y", 5, 5, 1e-4);
        const PropId id = post_reified(s, b, {"{0}<={1}"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.bounds(x) == Interval(5, 10));
        const auto& p = dynamic_cast<const ReifiedRealPropagator&>(s.propagator(id));
        CHECK(p.contractor_ids().negated.size() == 1);
        std::vector<double> probe{4, 4, 5, 5};
        CHECK(s.contractors().contract(p.contractor_ids().negated[0], probe) == ContractStatus::Fail);
    }
    {
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(1, 1));
        const RealVar x = s.make_real("x", 0, 10, 1e-4);
        const RealVar y = s.make_real("y", 5, 5, 1e-4);
        post_reified(s, b, {"{0}<={1}"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.bounds(x) == Interval(0, 5));
    }
}

TEST_CASE("negated conjunctions filter once one relation is undecided", "[real][reify]")
{
    {
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(0, 0));
        const RealVar x = s.make_real("x", 0, 0.5, 1e-4);
        const RealVar y = s.make_real("y", 0, 3, 1e-4);
        post_reified(s, b, {"{0}<=1", "{1}<=1"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.bounds(y) == Interval(1, 3));
    }
    {
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(0, 0));
        const RealVar x = s.make_real("x", 0, 0.5, 1e-4);
        const RealVar y = s.make_real("y", 0, 0.5, 1e-4);
        post_reified(s, b, {"{0}<=1", "{1}<=1"}, {x, y});
        CHECK_FALSE(root_propagate(s));
    }
    {
        // one relation already false: the disjunction holds, nothing moves
        Solver s;
        const IntVar b = s.make_int("b", IntDomain::enumerated(0, 0));
        const RealVar x = s.make_real("x", 2, 3, 1e-4);
        const RealVar y = s.make_real("y", 0, 3, 1e-4);
        post_reified(s, b, {"{0}<=1", "{1}<=1"}, {x, y});
        REQUIRE(root_propagate(s));
        CHECK(s.bounds(y) == Interval(0, 3));
    }
}

TEST_CASE("reification rejects equations and non-boolean indicators", "[real][reify][errors]")
{
    Solver s;
    const IntVar b = s.make_int("b", IntDomain::enumerated(0, 1));
    const IntVar wide = s.make_int("w", IntDomain::enumerated(0, 2));
    const RealVar x = s.make_real("x", 0, 1, 1e-4);
    const RealVar y = s.make_real("y", 0, 1, 1e-4);
    CHECK_THROWS_AS(post_reified(s, b, {"{0}={1}"}, {x, y}), std::invalid_argument);
    CHECK_THROWS_AS(post_reified(s, wide, {"{0}<{1}"}, {x, y}), std::invalid_argument);
}

TEST_CASE("reified search agrees with both branches", "[real][reify][search]")
{
    // b <=> x + y <= 1 over integers seen as reals
    Solver s;
    const IntVar b = s.make_int("b", IntDomain::enumerated(0, 1));
    const IntVar x = s.make_int("x", IntDomain::enumerated(0, 2));
    const IntVar y = s.make_int("y", IntDomain::enumerated(0, 2));
    post_reified(s, b, {"{0}+{1}<=1"}, {RealView{x}, RealView{y}});
    s.set_verify(true);
    int count = 0;
    CHECK(s.solve([&](const Solution& sol) {
        ++count;
        CHECK((sol.ints[0] == 1) == (sol.ints[1] + sol.ints[2] <= 1));
        return true;
    }) == SearchStatus::Complete);
    CHECK(count == 9);
    CHECK(s.verify_report().restoration_mismatches == 0);
}

TEST_CASE("passive propagators stay entailed during search", "[real][trail]")
{
    Solver s;
    const IntVar g = s.make_int("g", IntDomain::enumerated(0, 4));
    const IntVar p = s.make_int("p", IntDomain::bounded(5, 24));
    post_element(s, p, {11, 24, 5, 23, 17}, g);
    const RealVar half = s.make_real("half", 0, 24, 1e-4);
    post_real(s, {"{0}/2={1}"}, {RealView{p}, half});
    post_real(s, {"{0}>=0"}, {half});
    s.set_verify(true);
    int count = 0;
    CHECK(s.solve([&](const Solution& sol) {
        ++count;
        CHECK(sol.reals[0].contains(static_cast<double>(sol.ints[1]) / 2));
        return true;
    }) == SearchStatus::Complete);
    CHECK(count == 5);
    const auto& report = s.verify_report();
    CHECK(report.passive_checks > 0);
    CHECK(report.passive_violations == 0);
    CHECK(report.restoration_mismatches == 0);
}

TEST_CASE("minimizing a real objective", "[real][optimization]")
{
    Solver s;
    const IntVar g = s.make_int("g", IntDomain::enumerated(0, 4));
    const IntVar p = s.make_int("p", IntDomain::bounded(5, 24));
    post_element(s, p, {11, 24, 5, 23, 17}, g);
    const RealVar dev = s.make_real("dev", 0, 24, 1e-4);
    post_real(s, {"abs({0}-16)={1}"}, {RealView{p}, dev});
    s.set_decision_vars({g});
    const auto r = s.minimize(dev);
    REQUIRE(r.status == OptimizationStatus::Optimal);
    CHECK(r.best->ints[1] == 17);
    CHECK(r.best->reals[0].contains(1));
}
