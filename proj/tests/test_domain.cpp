#include "hybridcp/domain.hpp"

#include "support/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <stdexcept>
#include <vector>

using hybridcp::DomainChange;
using hybridcp::IntDomain;

TEST_CASE("enumerated domains keep holes", "[domain]")
{
    IntDomain d = IntDomain::enumerated({11, 24, 5, 23, 17, 5});
    CHECK(d.is_enumerated());
    CHECK(d.size() == 5);
    CHECK(d.min() == 5);
    CHECK(d.max() == 24);
    CHECK(d.contains(17));
    CHECK_FALSE(d.contains(16));
    CHECK(d.next(5) == 11);
    CHECK(d.next(24) == 25);
    CHECK(d.values() == std::vector<IntDomain::value_type>{5, 11, 17, 23, 24});

    CHECK(d.remove(5) == DomainChange::Changed);
    CHECK(d.min() == 11);
    CHECK(d.remove(5) == DomainChange::Unchanged);
    CHECK(d.restrict_bounds(12, 23) == DomainChange::Changed);
    CHECK(d.min() == 17);
    CHECK(d.max() == 23);
    CHECK(d.size() == 2);
    CHECK(d.restrict_bounds(18, 22) == DomainChange::Emptied);
    CHECK(d.size() == 2);
    CHECK(d.remove(23) == DomainChange::Changed);
    CHECK(d.is_fixed());
    CHECK(d.remove(17) == DomainChange::Emptied);
    CHECK(d.min() == 17);
}

TEST_CASE("bounded domains move only their bounds", "[domain]")
{
    IntDomain d = IntDomain::bounded(5, 24);
    CHECK_FALSE(d.is_enumerated());
    CHECK(d.size() == 20);
    CHECK(d.remove(10) == DomainChange::Unchanged);
    CHECK(d.contains(10));
    CHECK(d.remove(5) == DomainChange::Changed);
    CHECK(d.min() == 6);
    CHECK(d.restrict_bounds(17, 23) == DomainChange::Changed);
    CHECK(d.size() == 7);
    CHECK(d.restrict_bounds(0, 100) == DomainChange::Unchanged);
    CHECK(d.restrict_bounds(30, 40) == DomainChange::Emptied);

    // huge ranges are fine when bounded
    IntDomain big = IntDomain::bounded(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
    CHECK(big.size() == (std::uint64_t{1} << 41) + 1);
}

TEST_CASE("invalid construction", "[domain][errors]")
{
    CHECK_THROWS_AS(IntDomain::enumerated(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(IntDomain::bounded(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(IntDomain::enumerated(std::vector<IntDomain::value_type>{}), std::invalid_argument);
    CHECK_THROWS_AS(IntDomain::enumerated(0, std::int64_t{1} << 40), std::invalid_argument);
}

TEST_CASE("enumerated domains agree with a set model", "[domain][property]")
{
    testgen::Rng rng(12);
    for (int n = 0; n < 500; ++n) {
        const int lo = testgen::uniform_int(rng, -10, 10);
        const int hi = lo + testgen::uniform_int(rng, 0, 15);
        IntDomain d = IntDomain::enumerated(lo, hi);
        std::set<IntDomain::value_type> model;
        for (int v = lo; v <= hi; ++v) model.insert(v);

        for (int step = 0; step < 20; ++step) {
            DomainChange got;
            std::set<IntDomain::value_type> next = model;
            if (testgen::chance(rng, 0.5)) {
                const int v = testgen::uniform_int(rng, lo - 2, hi + 2);
                next.erase(v);
                got = d.remove(v);
            } else {
                const int a = testgen::uniform_int(rng, lo - 2, hi + 2);
                const int b = testgen::uniform_int(rng, a, hi + 3);
                std::erase_if(next, [&](auto v) { return v < a || v > b; });
                got = d.restrict_bounds(a, b);
            }
            if (next.empty()) {
                REQUIRE(got == DomainChange::Emptied);
            } else {
                REQUIRE(got == (next == model ? DomainChange::Unchanged : DomainChange::Changed));
                model = next;
            }
            REQUIRE(d.size() == model.size());
            REQUIRE(d.min() == *model.begin());
            REQUIRE(d.max() == *model.rbegin());
            REQUIRE(d.values() == std::vector<IntDomain::value_type>(model.begin(), model.end()));
        }
    }
}
