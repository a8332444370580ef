#include "hybridcp/contractor.hpp"

#include "support/oracle.hpp"
#include "support/random.hpp"
#include "support/soundness.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

using namespace hybridcp;

namespace {

std::size_t make(ContractorRegistry& reg, std::vector<std::string> functions, std::size_t arity)
{
    return reg.create_contractor(functions, arity);
}

bool within_ulps(double got, double want, std::uint64_t ulps = 1)
{
    return oracle::ulp_distance(got, want) <= ulps;
}

} // namespace

TEST_CASE("status codes have fixed values", "[contract]")
{
    CHECK(static_cast<int>(ContractStatus::Fail) == 0);
    CHECK(static_cast<int>(ContractStatus::Entailed) == 1);
    CHECK(static_cast<int>(ContractStatus::Contract) == 2);
    CHECK(static_cast<int>(ContractStatus::Nothing) == 3);
    CHECK(name(ContractStatus::Entailed) == "ENTAILED");
}

TEST_CASE("contract status vectors", "[contract]")
{
    ContractorRegistry reg;

    std::vector<double> b1{0, 1, 2, 3};
    CHECK(reg.contract(make(reg, {"{0}<{1}"}, 2), b1) == ContractStatus::Entailed);
    CHECK(b1 == std::vector<double>{0, 1, 2, 3});

    std::vector<double> b2{0, 1, 2, 3};
    CHECK(reg.contract(make(reg, {"{0}={1}"}, 2), b2) == ContractStatus::Fail);

    std::vector<double> b3{0, 10, 0, 3};
    CHECK(reg.contract(make(reg, {"{0}+{1}=10"}, 2), b3) == ContractStatus::Contract);
    CHECK(b3 == std::vector<double>{7, 10, 0, 3});

    std::vector<double> b4{1, 2};
    CHECK(reg.contract(make(reg, {"{0}={0}"}, 1), b4) == ContractStatus::Entailed);
    CHECK(b4 == std::vector<double>{1, 2});
}

TEST_CASE("NOTHING when no bound moves and nothing is proven", "[contract]")
{
    ContractorRegistry reg;
    std::vector<double> b{0, 3, 0, 3};
    CHECK(reg.contract(make(reg, {"{0}<{1}"}, 2), b) == ContractStatus::Nothing);
    CHECK(b == std::vector<double>{0, 3, 0, 3});
}

TEST_CASE("relations without variables are decided by evaluation", "[contract]")
{
    ContractorRegistry reg;
    std::vector<double> none;
    CHECK(reg.contract(make(reg, {"1<2"}, 0), none) == ContractStatus::Entailed);
    CHECK(reg.contract(make(reg, {"2<1"}, 0), none) == ContractStatus::Fail);
}

TEST_CASE("registry ids follow creation order", "[registry]")
{
    ContractorRegistry reg;
    CHECK(make(reg, {"{0}<1"}, 1) == 0);
    CHECK(make(reg, {"({0}+{1}+{2})/3={3}", "(abs({0}-{3})+abs({1}-{3})+abs({2}-{3}))/3={4}"}, 5) == 1);
    CHECK(reg.size() == 2);
    CHECK(reg.at(1).programs().size() == 2);
    CHECK(reg.at(1).arity() == 5);
    CHECK_THROWS_AS(make(reg, {"{9}=1"}, 2), ParseError);
    CHECK(reg.size() == 2);
}

TEST_CASE("contract argument errors", "[registry][errors]")
{
    ContractorRegistry reg;
    const std::size_t id = make(reg, {"{0}<{1}"}, 2);
    std::vector<double> ok{0, 1, 2, 3};
    CHECK_THROWS_AS(reg.contract(7, ok), UnknownContractor);
    std::vector<double> short_buf{0, 1, 2};
    CHECK_THROWS_AS(reg.contract(id, short_buf), MalformedBounds);
    std::vector<double> reversed{1, 0, 2, 3};
    CHECK_THROWS_AS(reg.contract(id, reversed), MalformedBounds);
    std::vector<double> nan{std::nan(""), 1, 2, 3};
    CHECK_THROWS_AS(reg.contract(id, nan), MalformedBounds);
}

TEST_CASE("hc4_revise examples", "[hc4]")
{
    const Box a = hc4_revise(parse("{0}+{1}=10", 2), {Interval(0, 10), Interval(0, 3)});
    CHECK(a[0] == Interval(7, 10));
    CHECK(a[1] == Interval(0, 3));

    const Box s = hc4_revise(parse("sqr({0})=4", 1), {Interval(0, 10)});
    CHECK(s[0].lo() <= 2);
    CHECK(s[0].hi() >= 2);
    CHECK(within_ulps(s[0].lo(), 2));
    CHECK(within_ulps(s[0].hi(), 2));

    const Box m = hc4_revise(parse("{0}*{1}=12", 2), {Interval(1, 4), Interval(2, 5)});
    CHECK(m[0].lo() <= 2.4);
    CHECK(within_ulps(m[0].lo(), 2.4));
    CHECK(m[0].hi() == 4);
    CHECK(m[1].lo() >= 3 - 1e-15);
    CHECK(within_ulps(m[1].lo(), 3));
    CHECK(m[1].hi() == 5);

    const Box f = hc4_revise(parse("{0}={1}", 2), {Interval(0, 1), Interval(2, 3)});
    CHECK(f[0].is_empty());
    CHECK(f[1].is_empty());
}

TEST_CASE("points removed by the product example all violate it", "[hc4][property]")
{
    const Box before{Interval(1, 4), Interval(2, 5)};
    const Relation r = parse("{0}*{1}=12", 2);
    const Box after = hc4_revise(r, before);
    int removed = 0;
    for (int i = 0; i <= 600; ++i) {
        for (int j = 0; j <= 600; ++j) {
            const double x = 1 + 3.0 * i / 600;
            const double y = 2 + 3.0 * j / 600;
            if (after[0].contains(x) && after[1].contains(y)) {
                continue;
            }
            ++removed;
            const std::vector<double> p{x, y};
            REQUIRE_FALSE(*oracle::satisfies(r, p));
        }
    }
    CHECK(removed > 0);
}

TEST_CASE("fixpoint examples", "[fixpoint]")
{
    ContractorRegistry reg;
    const Contractor& chain = reg.at(make(reg, {"{0}={1}", "{1}={2}"}, 3));
    const Box b = fixpoint_contract(chain, {Interval(0, 10), Interval(2, 8), Interval(5, 5)});
    for (const Interval& x : b) {
        CHECK(within_ulps(x.lo(), 5));
        CHECK(within_ulps(x.hi(), 5));
        CHECK(x.contains(5));
    }

    // a single relation on which one revise is already a fixpoint
    const Relation lin = parse("{0}+{1}=10", 2);
    const Contractor& single = reg.at(reg.create_contractor(std::vector<Relation>{lin}, 2));
    const Box once = hc4_revise(lin, {Interval(0, 10), Interval(0, 3)});
    REQUIRE(hc4_revise(lin, once) == once);
    CHECK(fixpoint_contract(single, {Interval(0, 10), Interval(0, 3)}) == once);
}

TEST_CASE("fixpoint keeps every grid solution of random systems", "[fixpoint][property]")
{
    testgen::Rng rng(555);
    int systems = 0;
    int solutions = 0;
    for (int n = 0; n < 30; ++n) {
        std::vector<Relation> rels;
        for (int k = 0; k < 3; ++k) {
            rels.push_back(Relation{testgen::random_expr(rng, 2, 3), testgen::random_relop(rng, false),
                                    testgen::random_expr(rng, 2, 3)});
        }
        ContractorRegistry reg;
        const Contractor& c = reg.at(reg.create_contractor(rels, 2));
        const double x0 = testgen::uniform(rng, -3, 3);
        const double y0 = testgen::uniform(rng, -3, 3);
        const Box box{Interval(x0, x0 + 0.1), Interval(y0, y0 + 0.1)};
        const Box out = fixpoint_contract(c, box);
        ++systems;
        for (int i = 0; i <= 100; ++i) {
            for (int j = 0; j <= 100; ++j) {
                const std::vector<double> p{x0 + 1e-3 * i, y0 + 1e-3 * j};
                if (p[0] > box[0].hi() || p[1] > box[1].hi()) {
                    continue;
                }
                bool all = true;
                for (const Relation& r : rels) {
                    const auto s = oracle::satisfies(r, p);
                    if (!s || !*s) {
                        all = false;
                        break;
                    }
                }
                if (!all) {
                    continue;
                }
                ++solutions;
                INFO(to_string(rels[0]) << " ; " << to_string(rels[1]) << " ; " << to_string(rels[2]));
                REQUIRE(out[0].contains(p[0]));
                REQUIRE(out[1].contains(p[1]));
            }
        }
    }
    CHECK(systems == 30);
    CHECK(solutions > 0);
}

TEST_CASE("stopping rule ends slow convergence", "[fixpoint]")
{
    // x = y/2 and y = x/2 converge to 0 geometrically; the loop must end
    ContractorRegistry reg(FixpointOptions{0.01, 1000});
    std::vector<double> b{1, 2, 1, 2};
    std::vector<double> c{-1, 2, -1, 2};
    const std::size_t id = make(reg, {"{0}={1}/2", "{1}={0}/2"}, 2);
    CHECK(reg.contract(id, b) == ContractStatus::Fail);
    CHECK(reg.contract(id, c) == ContractStatus::Contract);
    for (int i : {0, 2}) {
        CHECK(c[i] <= 0);
        CHECK(c[i + 1] >= 0);
        CHECK(c[i + 1] - c[i] < 0.5);
    }
}

TEST_CASE("contract is a pure function of its inputs", "[contract]")
{
    ContractorRegistry reg;
    const std::size_t id = make(reg, {"({0}+{1}+{2})/3={3}", "(abs({0}-{3})+abs({1}-{3})+abs({2}-{3}))/3={4}"}, 5);
    const std::vector<double> input{17, 24, 17, 24, 17, 24, 5, 24, 0, 24};
    std::vector<double> first = input;
    const ContractStatus s1 = reg.contract(id, first);
    for (int i = 0; i < 5; ++i) {
        std::vector<double> again = input;
        CHECK(reg.contract(id, again) == s1);
        CHECK(again == first);
    }
    CHECK(s1 == ContractStatus::Contract);
    CHECK(first[6] >= 17);
    CHECK(first[7] <= 24);
}

TEST_CASE("HC4 never removes a satisfying sample", "[hc4][property]")
{
    testgen::Rng rng(8080);
    for (int n = 0; n < 60; ++n) {
        const std::size_t nvars = static_cast<std::size_t>(testgen::uniform_int(rng, 1, 3));
        const Relation r = testgen::random_relation(rng, nvars);
        const Box box = testgen::random_box(rng, nvars);
        const auto out = testgen::check_soundness(rng, r, box, 2000);
        INFO(out.description);
        REQUIRE(out.removed == 0);
        REQUIRE(out.fail_witnesses == 0);
        REQUIRE(out.entailed_breaks == 0);
    }
}
