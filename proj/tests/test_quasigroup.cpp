#include "muq/quasigroup.hpp"

#include "doctest.h"

#include <random>

using namespace muq;

TEST_SUITE("quasigroup") {

    TEST_CASE("qg_check accepts quasigroups") {
        CHECK(qg_check(std::vector<Sym>{1, 2, 0}, 1, 3).ok);
        const auto F2 = field_make(2);
        CHECK(qg_check(qg_linear(F2, 2, Word{1, 1}, 0)).ok); // XOR
    }

    TEST_CASE("qg_check rejects with a certificate") {
        // order 3, m=2, row 0 repeats value 0
        const std::vector<Sym> bad{0, 0, 2, 1, 2, 0, 2, 0, 1};
        const auto chk = qg_check(bad, 2, 3);
        CHECK(!chk.ok);
        CHECK(chk.position >= 1);
        CHECK(chk.position <= 2);
        CHECK_THROWS_AS(qg_check(std::vector<Sym>{0, 1}, 2, 2), Error); // wrong length
    }

    TEST_CASE("qg_linear") {
        const auto F3 = field_make(3);
        const auto f = qg_linear(F3, 1, Word{2}, 1); // 1 + 2x
        CHECK(f.table == std::vector<Sym>{1, 0, 2});
        CHECK_THROWS_AS(qg_linear(F3, 2, Word{1, 0}, 0), Error);

        // every qg_linear output is a quasigroup (exhaustive coefficients
        // for small arity, sampled at m = 4)
        std::mt19937_64 rng(3);
        for (int q : {2, 3, 4, 5}) {
            const auto F = field_make(q);
            for (int m = 1; m <= 4; ++m) {
                for (int rep = 0; rep < (m <= 2 ? 30 : 10); ++rep) {
                    Word coeffs(m);
                    for (auto& c : coeffs) c = static_cast<Sym>(1 + rng() % (q - 1));
                    const Sym c0 = static_cast<Sym>(rng() % q);
                    CHECK(qg_check(qg_linear(F, m, coeffs, c0)).ok);
                }
            }
        }
    }

    TEST_CASE("solve_last inverts every line") {
        const auto F3 = field_make(3);
        const auto f = qg_linear(F3, 2, Word{1, 2}, 1);
        for (int x = 0; x < 3; ++x)
            for (int target = 0; target < 3; ++target) {
                const Word prefix{static_cast<Sym>(x)};
                const Sym y = f.solve_last(prefix, static_cast<Sym>(target));
                CHECK(f.eval(Word{static_cast<Sym>(x), y}) == target);
            }
    }

    TEST_CASE("qg_count exact values") {
        CHECK(qg_count(1, 3) == 6);
        CHECK(qg_count(2, 3) == 12);
        CHECK(qg_count(3, 3) == 24); // 3 * 2^3
        CHECK(qg_count(1, 4) == 24);
        CHECK(qg_count(2, 4) == 576);
        for (int m = 1; m <= 6; ++m) CHECK(qg_count(m, 2) == 2);
        CHECK(qg_count(1, 6) == 720);
        CHECK_THROWS_AS(qg_count(4, 3), Error);
        CHECK_THROWS_AS(qg_count(2, 5), Error);
    }

    TEST_CASE("qg_count is schedule independent") {
        CHECK(qg_count(3, 3, 2) == qg_count(3, 3, 1));
        CHECK(qg_count(1, 6, 3) == 720);
    }

    TEST_CASE("enumeration stream is deterministic and valid") {
        const auto a = qg_first(3, 2, 10);
        const auto b = qg_first(3, 2, 10);
        CHECK(a.size() == 2);
        CHECK(a[0].table == b[0].table);
        CHECK(a[1].table == b[1].table);
        for (const auto& f : a) CHECK(qg_check(f).ok);
        // first 5 of the 48 4-ary order-3 quasigroups
        const auto c = qg_first(4, 3, 5);
        CHECK(c.size() == 5);
        for (const auto& f : c) CHECK(qg_check(f).ok);
    }

    TEST_CASE("vh pairs") {
        const auto F2 = field_make(2);
        const MultaryQuasigroup id{1, 2, {0, 1}};
        CHECK(vh_pair_check(id, id, F2));

        const auto F3 = field_make(3);
        const auto v = qg_linear(F3, 2, Word{1, 1}, 0);
        const auto h = qg_linear(F3, 2, Word{1, 2}, 0);
        CHECK(vh_pair_check(v, h, F3));
        CHECK(!vh_pair_check(v, v, F3));

        // the canonical linear pair works for every supported field
        for (int q : {2, 3, 4, 5}) {
            const auto F = field_make(q);
            Word vc(q - 1, 1), hc(q - 1);
            for (int i = 0; i < q - 1; ++i) hc[i] = static_cast<Sym>(i + 1);
            CHECK(vh_pair_check(qg_linear(F, q - 1, vc, 0), qg_linear(F, q - 1, hc, 0), F));
        }
    }

    TEST_CASE("sigma_from_component_law") {
        const auto F2 = field_make(2);
        const MultaryQuasigroup id{1, 2, {0, 1}};
        const auto xor2 = qg_linear(F2, 2, Word{1, 1}, 0);
        const auto composed = sigma_from_component_law(xor2, id, 1);
        CHECK(composed.arity == 2);
        CHECK(composed.table == xor2.table);

        const auto F3 = field_make(3);
        std::mt19937_64 rng(9);
        for (int rep = 0; rep < 10; ++rep) {
            const auto v = qg_linear(F3, 2, Word{static_cast<Sym>(1 + rng() % 2), static_cast<Sym>(1 + rng() % 2)}, 0);
            const auto V = qg_linear(F3, 2, Word{static_cast<Sym>(1 + rng() % 2), static_cast<Sym>(1 + rng() % 2)}, 0);
            const auto f = sigma_from_component_law(V, v, 1);
            CHECK(f.arity == (3 - 1) * 1 + 1);
            CHECK(qg_check(f).ok);
        }
        // arity (q-1)k+1
        const auto F = field_make(2);
        const auto V3 = qg_linear(F, 4, Word{1, 1, 1, 1}, 0);
        CHECK(sigma_from_component_law(V3, id, 3).arity == 4);
    }

    TEST_CASE("linear_form detection") {
        const auto F3 = field_make(3);
        const auto f = qg_linear(F3, 2, Word{2, 1}, 2);
        const auto lin = linear_form(F3, f);
        REQUIRE(lin.has_value());
        CHECK(lin->first == Word{2, 1});
        CHECK(lin->second == 2);

        // a non-affine quasigroup of order 4: row-swapped XOR table
        MultaryQuasigroup g;
        g.arity = 2;
        g.order = 4;
        g.table = {0, 1, 2, 3, 1, 0, 3, 2, 3, 2, 1, 0, 2, 3, 0, 1};
        REQUIRE(qg_check(g).ok);
        const auto F4 = field_make(4);
        CHECK(!linear_form(F4, g).has_value());
    }

    TEST_CASE("composite-order count dominates the factor-count product") {
        CHECK(qg_count(1, 6) >= qg_count(1, 2) * qg_count(1, 3) * qg_count(1, 3));
    }
}
