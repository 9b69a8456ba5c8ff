#include "muq/combiner.hpp"

#include "test_util.hpp"

#include "doctest.h"

using namespace muq;
using muq::test::thrown_code;

namespace {

Word w_(const std::string& digits, int q = 10) { return parse_word(digits, q); }

MultaryQuasigroup identity_qg(int order) {
    MultaryQuasigroup f;
    f.arity = 1;
    f.order = order;
    f.table.resize(order);
    for (int i = 0; i < order; ++i) f.table[i] = static_cast<Sym>(i);
    return f;
}

// the two mu=000 / mu=111 mollard components over GF(2), n=7
std::pair<MuComponent, MuComponent> binary_components(const FieldTable& F) {
    const auto id = identity_qg(2);
    const auto xor2 = qg_linear(F, 2, Word{1, 1}, 0);
    const std::vector<MultaryQuasigroup> V{xor2, xor2, xor2};
    const std::vector<MultaryQuasigroup> H{qg_linear(F, 4, Word{1, 1, 1, 1}, 0)};
    const Code czero = Code::from_words(2, 1, {Word{0}});
    return {build_mollard_phelps(F, w_("000", 2), czero, id, id, V, H),
            build_mollard_phelps(F, w_("111", 2), czero, id, id, V, H)};
}

MuComponent phelps_component(const FieldTable& F, const Word& mu, std::size_t qg_index) {
    const auto id = identity_qg(2);
    const auto xor2 = qg_linear(F, 2, Word{1, 1}, 0);
    const std::vector<MultaryQuasigroup> V{xor2, xor2, xor2};
    const std::vector<PerfectPartition> parts(4, perfect_partition(F, 1));
    const auto pool = qg_first(3, 2, qg_index + 1);
    return build_phelps(F, mu, parts, id, id, V, pool.at(qg_index));
}

} // namespace

TEST_SUITE("combiner") {

    TEST_CASE("binary combining construction") {
        const auto F = field_make(2);
        auto [K0, K1] = binary_components(F);
        const Code outer = Code::from_words(2, 3, {w_("000", 2), w_("111", 2)});
        const Assembly A = Assembly::of(outer, {K0, K1});
        const Code C = combine(F, A);
        CHECK(C.size() == 16);
        CHECK(is_perfect(C).ok);
        CHECK(C.size() == ipow(2, A.layout.n - A.layout.m));
    }

    TEST_CASE("swapping in a shifted component from another code stays perfect") {
        const auto F = field_make(2);
        auto [K0, K1] = binary_components(F);
        const Code outer = Code::from_words(2, 3, {w_("000", 2), w_("111", 2)});
        const Code reference = combine(F, Assembly::of(outer, {K0, K1}));

        // a mu=000 component of a different perfect code, shifted to 111
        // (pool index 0: its shift lands on the other tail parity)
        const MuComponent other = phelps_component(F, w_("000", 2), 0);
        const MuComponent swapped = component_shift(F, other, w_("111", 2));
        REQUIRE(swapped.sigma == K0.sigma);
        const Code mixed = combine(F, Assembly::of(outer, {K0, swapped}));
        CHECK(is_perfect(mixed).ok);
        CHECK(mixed.size() == 16);
        CHECK(!(mixed == reference)); // a genuinely different perfect code
    }

    TEST_CASE("ternary n=13 assembly") {
        const auto F = field_make(3);
        const Code outer = hamming_code(F, 2);
        REQUIRE(outer.size() == 9);

        const auto v = qg_linear(F, 2, Word{1, 1}, 0);
        const auto h = qg_linear(F, 2, Word{1, 2}, 0);
        const std::vector<MultaryQuasigroup> V(4, qg_linear(F, 2, Word{1, 1}, 0));
        const std::vector<PerfectPartition> parts(5, perfect_partition(F, 1));
        const auto Q = qg_linear(F, 4, Word{1, 1, 1, 1}, 0); // 4-ary, order 3

        std::vector<MuComponent> comps;
        for (std::size_t i = 0; i < outer.size(); ++i)
            comps.push_back(build_phelps(F, outer.word_at(i), parts, v, h, V, Q));
        const Assembly A = Assembly::of(outer, std::move(comps));
        const Code C = combine(F, A, {.verify_components = true, .threads = 2});
        CHECK(C.size() == 59049); // 3^10
        CHECK(C.n == 13);
    }

    TEST_CASE("thread count does not change the result") {
        const auto F = field_make(2);
        auto [K0, K1] = binary_components(F);
        const Code outer = Code::from_words(2, 3, {w_("000", 2), w_("111", 2)});
        const Assembly A = Assembly::of(outer, {K0, K1});
        const Code one = combine(F, A, {.verify_components = true, .threads = 1});
        const Code two = combine(F, A, {.verify_components = true, .threads = 2});
        CHECK(one == two);
    }

    TEST_CASE("error paths") {
        const auto F = field_make(2);
        auto [K0, K1] = binary_components(F);
        const Code outer = Code::from_words(2, 3, {w_("000", 2), w_("111", 2)});

        // outer not perfect
        {
            const Code bad_outer = Code::from_words(2, 3, {w_("000", 2), w_("011", 2)});
            auto A = Assembly::of(bad_outer, {K0, component_shift(F, K1, w_("011", 2))});
            CHECK(thrown_code([&] { combine(F, A); }) == Err::OuterNotPerfect);
        }
        // missing component
        {
            Assembly A = Assembly::of(outer, {K0, K1});
            A.components.pop_back();
            CHECK(thrown_code([&] { combine(F, A); }) == Err::LayoutMismatch);
        }
        // tampered component: law violation
        {
            auto K1bad = K1;
            auto words = std::vector<Word>{};
            for (std::size_t i = 0; i < K1bad.code.size(); ++i)
                words.push_back(K1bad.code.word_at(i));
            words[0][0] ^= 1;
            K1bad.code = Code::from_words(2, 7, words);
            Assembly A = Assembly::of(outer, {K0, K1bad});
            CHECK(thrown_code([&] { combine(F, A); }) == Err::ComponentLawViolation);
        }
        // overlap slips past disabled verification but not past the union
        {
            auto K1dup = K0; // same words, wrong mu label
            K1dup.mu = w_("111", 2);
            Assembly A = Assembly::of(outer, {K0, K1dup});
            CHECK(thrown_code([&] { combine(F, A, {.verify_components = false}); }) ==
                  Err::NotPerfectResult);
        }
    }

    TEST_CASE("rank bound for linear-sigma assemblies") {
        const auto F = field_make(2);
        auto [K0, K1] = binary_components(F);
        const Code outer = Code::from_words(2, 3, {w_("000", 2), w_("111", 2)});

        const Assembly plain = Assembly::of(outer, {K0, K1});
        CHECK(assembly_rank_bound_check(F, plain));
        CHECK(assembly_rank(F, plain) == 4); // the Hamming code itself

        const MuComponent swapped = component_shift(F, phelps_component(F, w_("000", 2), 0), w_("111", 2));
        const Assembly mixed = Assembly::of(outer, {K0, swapped});
        CHECK(assembly_rank_bound_check(F, mixed));
        CHECK(assembly_rank(F, mixed) <= 7 - 2);

        // nonlinear sigma is rejected
        Assembly affine = plain;
        affine.sigma.sigmas[0] = qg_linear(F, 2, Word{1, 1}, 1);
        CHECK_THROWS_AS(assembly_rank_bound_check(F, affine), Error);
    }
}
