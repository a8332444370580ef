#include "hybridcp/c_api.h"
#include "hybridcp/contractor.hpp"

#include "support/random.hpp"
#include "support/soundness.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cstring>
#include <string>
#include <vector>

namespace {

int create(int handle, std::vector<const char*> functions, std::size_t arity, std::string* error = nullptr)
{
    char buf[512] = {};
    const int id = hybridcp_create_contractor(handle, functions.data(), functions.size(), arity, buf, sizeof buf);
    if (error != nullptr) {
        *error = buf;
    }
    return id;
}

struct Vector {
    const char* function;
    std::size_t arity;
    std::vector<double> bounds;
    int status;
    std::vector<double> expected; // empty: not checked
};

const std::vector<Vector> kVectors{
    {"{0}<{1}", 2, {0, 1, 2, 3}, HYBRIDCP_ENTAILED, {0, 1, 2, 3}},
    {"{0}={1}", 2, {0, 1, 2, 3}, HYBRIDCP_FAIL, {}},
    {"{0}+{1}=10", 2, {0, 10, 0, 3}, HYBRIDCP_CONTRACT, {7, 10, 0, 3}},
    {"{0}={0}", 1, {1, 2}, HYBRIDCP_ENTAILED, {1, 2}},
};

} // namespace

TEST_CASE("status constants", "[c_api]")
{
    CHECK(HYBRIDCP_FAIL == 0);
    CHECK(HYBRIDCP_ENTAILED == 1);
    CHECK(HYBRIDCP_CONTRACT == 2);
    CHECK(HYBRIDCP_NOTHING == 3);
}

TEST_CASE("status vectors through the flat interface", "[c_api]")
{
    const int h = hybridcp_open();
    REQUIRE(h > 0);
    for (const Vector& v : kVectors) {
        INFO(v.function);
        const int id = create(h, {v.function}, v.arity);
        REQUIRE(id >= 0);
        std::vector<double> b = v.bounds;
        CHECK(hybridcp_contract(h, id, b.data(), b.size()) == v.status);
        if (!v.expected.empty()) {
            CHECK(b == v.expected);
        }
    }
    CHECK(hybridcp_close(h) == 0);
}

TEST_CASE("first contractor has id 0 and the average function is usable", "[c_api]")
{
    const int h = hybridcp_open();
    CHECK(create(h, {"({0}+{1}+{2})/3={3}"}, 4) == 0);
    CHECK(create(h, {"{0}<{1}"}, 2) == 1);
    std::vector<double> b{17, 17, 23, 23, 24, 24, 5, 24};
    CHECK(hybridcp_contract(h, 0, b.data(), b.size()) == HYBRIDCP_CONTRACT);
    CHECK(b[6] <= 64.0 / 3.0);
    CHECK(b[7] >= 64.0 / 3.0);
    CHECK(b[7] - b[6] < 1e-12);
    hybridcp_close(h);
}

TEST_CASE("results are bit-identical to direct core calls", "[c_api][property]")
{
    testgen::Rng rng(99);
    const int h = hybridcp_open();
    hybridcp::ContractorRegistry core;
    for (int n = 0; n < 300; ++n) {
        const std::size_t nvars = static_cast<std::size_t>(testgen::uniform_int(rng, 1, 3));
        const hybridcp::Relation r = testgen::random_relation(rng, nvars);
        const std::string text = hybridcp::to_string(r);
        const int id = create(h, {text.c_str()}, nvars);
        REQUIRE(id >= 0);
        const std::size_t core_id = core.create_contractor(std::vector<std::string>{text}, nvars);
        REQUIRE(core_id == static_cast<std::size_t>(id));

        std::vector<double> flat;
        for (const auto& x : testgen::random_box(rng, nvars)) {
            flat.push_back(x.lo());
            flat.push_back(x.hi());
        }
        std::vector<double> via_c = flat;
        std::vector<double> direct = flat;
        const int s = hybridcp_contract(h, id, via_c.data(), via_c.size());
        const auto ds = core.contract(core_id, direct);
        INFO(text);
        REQUIRE(s == static_cast<int>(ds));
        if (s != HYBRIDCP_FAIL) {
            for (std::size_t i = 0; i < flat.size(); ++i) {
                REQUIRE(std::bit_cast<std::uint64_t>(via_c[i]) == std::bit_cast<std::uint64_t>(direct[i]));
            }
        }
    }
    hybridcp_close(h);
}

TEST_CASE("parse errors keep their position across the boundary", "[c_api][errors]")
{
    const int h = hybridcp_open();
    std::string msg;
    CHECK(create(h, {"{0}+{1})=1"}, 2, &msg) == HYBRIDCP_ERR_PARSE);
    CHECK(msg.find("position 7") != std::string::npos);
    CHECK(msg.find("{0}+{1})=1") != std::string::npos);
    CHECK(std::string(hybridcp_last_error(h)) == msg);

    CHECK(create(h, {"{9}=1"}, 2, &msg) == HYBRIDCP_ERR_PARSE);
    // a failed creation does not consume an id
    CHECK(create(h, {"{0}<1"}, 1) == 0);

    // truncated messages stay terminated
    char tiny[8];
    std::memset(tiny, 'x', sizeof tiny);
    const char* bad[] = {"(("};
    CHECK(hybridcp_create_contractor(h, bad, 1, 1, tiny, sizeof tiny) == HYBRIDCP_ERR_PARSE);
    CHECK(std::strlen(tiny) == 7);
    CHECK(hybridcp_create_contractor(h, bad, 1, 1, nullptr, 0) == HYBRIDCP_ERR_PARSE);
    hybridcp_close(h);
}

TEST_CASE("bad contractor ids and buffers", "[c_api][errors]")
{
    const int h = hybridcp_open();
    const int id = create(h, {"{0}<{1}"}, 2);
    std::vector<double> b{0, 1, 2, 3};
    CHECK(hybridcp_contract(h, 5, b.data(), b.size()) == HYBRIDCP_ERR_UNKNOWN_CONTRACTOR);
    CHECK(hybridcp_contract(h, -1, b.data(), b.size()) == HYBRIDCP_ERR_UNKNOWN_CONTRACTOR);
    CHECK(hybridcp_contract(h, id, b.data(), 3) == HYBRIDCP_ERR_MALFORMED_BOUNDS);
    CHECK(hybridcp_contract(h, id, nullptr, 4) == HYBRIDCP_ERR_MALFORMED_BOUNDS);
    std::vector<double> reversed{1, 0, 2, 3};
    CHECK(hybridcp_contract(h, id, reversed.data(), reversed.size()) == HYBRIDCP_ERR_MALFORMED_BOUNDS);
    CHECK(std::string(hybridcp_last_error(h)).size() > 0);
    hybridcp_close(h);
}

TEST_CASE("handles are independent and die on close", "[c_api]")
{
    const int a = hybridcp_open();
    const int b = hybridcp_open();
    REQUIRE(a != b);
    CHECK(create(a, {"{0}<1"}, 1) == 0);
    CHECK(create(b, {"{0}>1"}, 1) == 0);

    std::vector<double> x{0, 2};
    CHECK(hybridcp_contract(a, 0, x.data(), 2) == HYBRIDCP_CONTRACT);
    CHECK(x[1] == 1);
    x = {0, 2};
    CHECK(hybridcp_contract(b, 0, x.data(), 2) == HYBRIDCP_CONTRACT);
    CHECK(x[0] == 1);

    CHECK(hybridcp_close(a) == 0);
    CHECK(hybridcp_close(a) == HYBRIDCP_ERR_HANDLE);
    CHECK(hybridcp_contract(a, 0, x.data(), 2) == HYBRIDCP_ERR_HANDLE);
    CHECK(create(a, {"{0}<1"}, 1) == HYBRIDCP_ERR_HANDLE);
    CHECK(std::string(hybridcp_last_error(a)) == "invalid or closed handle");

    // a reopened registry starts numbering again
    const int c = hybridcp_open();
    CHECK(c != a);
    CHECK(create(c, {"{0}<1"}, 1) == 0);
    hybridcp_close(b);
    hybridcp_close(c);
}
