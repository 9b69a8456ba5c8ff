#include "muq/census.hpp"

#include "test_util.hpp"

#include "doctest.h"

#include <set>

using namespace muq;
using muq::test::thrown_code;

TEST_SUITE("census") {

    TEST_CASE("biguint") {
        CHECK(BigUint(0).to_string() == "0");
        CHECK(BigUint(1234567890123456789ull).to_string() == "1234567890123456789");
        CHECK(BigUint::pow(2, 0).to_string() == "1");
        CHECK(BigUint::pow(10, 20).to_string() == "100000000000000000000");
        // cross-check against native arithmetic on small products
        for (std::uint64_t a : {3ull, 48ull, 65537ull})
            for (std::uint64_t b : {1ull, 7ull, 1000003ull})
                CHECK((BigUint(a) * BigUint(b)).to_string() == std::to_string(a * b));
        CHECK(BigUint::pow(2, 100).to_string() == "1267650600228229401496703205376");
    }

    TEST_CASE("lower_bound(7, 2)") {
        const auto rep = lower_bound(7, 2);
        CHECK(rep.t == 3);
        CHECK(rep.qcount == 2);
        CHECK(rep.provenance == BoundReport::Source::enumerated);
        CHECK(rep.R == 2);
        CHECK(rep.bound.to_string() == "4");
        CHECK(rep.sphere_denom == 4);
        CHECK(rep.printed_denom == 5);
        CHECK(!rep.printed_R_integral);
    }

    TEST_CASE("lower_bound(4, 3)") {
        const auto rep = lower_bound(4, 3);
        CHECK(rep.t == 1);
        CHECK(rep.qcount == 6);
        CHECK(rep.R == 1);
        CHECK(rep.bound.to_string() == "6");
        // the printed denominator tq-q+1 = 1 would give R = 3, not 1
        CHECK(rep.printed_denom == 1);
        CHECK(rep.printed_R_integral);
        CHECK(rep.printed_R == 3);
        CHECK(rep.sphere_denom == 3);
    }

    TEST_CASE("lower_bound(13, 3)") {
        const auto rep = lower_bound(13, 3);
        CHECK(rep.t == 4);
        CHECK(rep.qcount == 48); // 3 * 2^4, closed form
        CHECK(rep.provenance == BoundReport::Source::formula);
        CHECK(rep.R == 9);
        std::uint64_t want = 1;
        for (int i = 0; i < 9; ++i) want *= 48;
        CHECK(rep.bound.to_string() == std::to_string(want));
        CHECK(rep.sphere_denom == 9);
        CHECK(rep.printed_denom == 10);
        CHECK(!rep.printed_R_integral);
    }

    TEST_CASE("lower_bound rejects bad lengths") {
        CHECK(thrown_code([] { lower_bound(8, 2); }) == Err::BadLength);
        CHECK(thrown_code([] { lower_bound(3, 3); }) == Err::BadLength); // m = 1
    }

    TEST_CASE("infeasible bounds and generations are refused") {
        // Q(6, 5): no enumeration cap fits and no closed form applies
        CHECK(thrown_code([] { lower_bound(31, 5); }) == Err::TooLarge);
        // exhaustive generation of 48^9 codes
        const auto F = field_make(3);
        CHECK(thrown_code([&] { generate_distinct_codes(F, 13, 3, 0); }) == Err::TooLarge);
    }

    TEST_CASE("exhaustive generation at n=7, q=2") {
        const auto F = field_make(2);
        const auto codes = generate_distinct_codes(F, 7, 2, 0);
        REQUIRE(codes.size() == 4);
        std::set<Code> uniq(codes.begin(), codes.end());
        CHECK(uniq.size() == 4);
        for (const auto& c : codes) {
            CHECK(c.size() == 16);
            CHECK(is_perfect(c).ok);
        }
    }

    TEST_CASE("exhaustive generation at n=4, q=3") {
        const auto F = field_make(3);
        const auto codes = generate_distinct_codes(F, 4, 3, 0);
        REQUIRE(codes.size() == 6);
        std::set<Code> uniq(codes.begin(), codes.end());
        CHECK(uniq.size() == 6);
        for (const auto& c : codes) CHECK(is_perfect(c).ok);
    }

    TEST_CASE("limited generation at n=13, q=3") {
        const auto F = field_make(3);
        const auto codes = generate_distinct_codes(F, 13, 3, 3, 2);
        REQUIRE(codes.size() == 3);
        std::set<Code> uniq(codes.begin(), codes.end());
        CHECK(uniq.size() == 3);
        for (const auto& c : codes) CHECK(c.size() == 59049);
    }

    TEST_CASE("census assemblies satisfy the rank bound") {
        const auto F = field_make(2);
        for (std::uint64_t idx : {0ull, 1ull, 2ull, 3ull}) {
            const Assembly A = census_assembly(F, 7, idx);
            CHECK(assembly_rank_bound_check(F, A));
        }
    }
}
