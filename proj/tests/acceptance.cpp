// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Time limits are enforced with wall-clock measurements.

#include "muq/census.hpp"
#include "muq/decomposer.hpp"
#include "muq/io.hpp"
#include "muq/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

using namespace muq;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    int id;
    std::string title;
    bool pass = false;
    std::string note;
    double secs = 0;
};

struct Fail {
    std::string what;
};

void expect(bool cond, const std::string& what) {
    if (!cond) throw Fail{what};
}

MultaryQuasigroup identity_qg(int order) {
    MultaryQuasigroup f;
    f.arity = 1;
    f.order = order;
    f.table.resize(order);
    for (int i = 0; i < order; ++i) f.table[i] = static_cast<Sym>(i);
    return f;
}

// shared corpus pieces ------------------------------------------------------

struct BinaryPieces {
    FieldTable F = field_make(2);
    MultaryQuasigroup id = identity_qg(2);
    MultaryQuasigroup xor2;
    std::vector<MultaryQuasigroup> V;
    std::vector<MultaryQuasigroup> H;
    std::vector<PerfectPartition> parts;
    Code czero;
    Code outer;
    BinaryPieces() {
        xor2 = qg_linear(F, 2, Word{1, 1}, 0);
        V = {xor2, xor2, xor2};
        H = {qg_linear(F, 4, Word{1, 1, 1, 1}, 0)};
        parts.assign(4, perfect_partition(F, 1));
        czero = Code::from_rows(2, 1, {0});
        outer = Code::from_words(2, 3, {parse_word("000", 2), parse_word("111", 2)});
    }
};

// perfect rank-5 length-7 code built with one shifted component
Code nonlinear7(const BinaryPieces& B) {
    const auto pool = qg_first(3, 2, 2);
    const auto K0 = build_phelps(B.F, parse_word("000", 2), B.parts, B.id, B.id, B.V, pool[1]);
    const auto other = build_phelps(B.F, parse_word("000", 2), B.parts, B.id, B.id, B.V, pool[0]);
    const auto K1 = component_shift(B.F, other, parse_word("111", 2));
    return combine(B.F, Assembly::of(B.outer, {K0, K1}));
}

// criteria -------------------------------------------------------------------

void c1_hamming_perfect(Criterion& c) {
    const std::vector<std::pair<int, int>> cases{{2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}, {5, 2}};
    std::ostringstream note;
    for (const auto& [q, m] : cases) {
        const auto t0 = Clock::now();
        const FieldTable F = field_make(q);
        const Code ham = hamming_code(F, m);
        const auto chk = is_perfect(ham);
        const double dt = seconds_since(t0);
        expect(chk.ok, "hamming(" + std::to_string(q) + "," + std::to_string(m) +
                           ") failed the covering check: " + chk.detail);
        expect(dt < 10.0, "hamming(" + std::to_string(q) + "," + std::to_string(m) + ") took " +
                              std::to_string(dt) + " s (limit 10)");
        note << "(" << q << "," << m << ") n=" << ham.n << " ok in " << std::fixed
             << std::setprecision(2) << dt << "s; ";
    }
    c.note = note.str();
    c.pass = true;
}

void c2_quasigroup_counts(Criterion& c) {
    const auto t0 = Clock::now();
    expect(qg_count(1, 3) == 6, "Q(1,3) != 6");
    expect(qg_count(2, 3) == 12, "Q(2,3) != 12");
    expect(qg_count(3, 3) == 24, "Q(3,3) != 24");
    for (int m = 1; m <= 6; ++m)
        expect(qg_count(m, 2) == 2, "Q(" + std::to_string(m) + ",2) != 2");
    const std::uint64_t q16 = qg_count(1, 6);
    expect(q16 == 720, "Q(1,6) != 720");
    expect(q16 >= 2 * 6 * 6, "Q(1,6) < Q(1,2) * Q(1,3)^2");
    const double dt = seconds_since(t0);
    expect(dt < 60.0, "counts took " + std::to_string(dt) + " s (limit 60)");
    c.note = "Q(m,3)=6,12,24; Q(m<=6,2)=2; Q(1,6)=720 >= 72; " + std::to_string(dt) + "s";
    c.pass = true;
}

void c3_exhaustive_generation(Criterion& c) {
    const FieldTable F2 = field_make(2);
    const auto codes7 = generate_distinct_codes(F2, 7, 2, 0);
    const auto bound7 = lower_bound(7, 2);
    expect(bound7.bound.to_string() == "4", "lower_bound(7,2) != 4");
    expect(codes7.size() == 4, "generate(7,2) produced " + std::to_string(codes7.size()));
    std::set<Code> uniq7(codes7.begin(), codes7.end());
    expect(uniq7.size() == 4, "generate(7,2) codes are not pairwise distinct");
    for (const auto& code : codes7)
        expect(is_perfect(code).ok, "a generated (7,2) code is not perfect");

    const FieldTable F3 = field_make(3);
    const auto codes4 = generate_distinct_codes(F3, 4, 3, 0);
    const auto bound4 = lower_bound(4, 3);
    expect(bound4.bound.to_string() == "6", "lower_bound(4,3) != 6");
    expect(codes4.size() == 6, "generate(4,3) produced " + std::to_string(codes4.size()));
    std::set<Code> uniq4(codes4.begin(), codes4.end());
    expect(uniq4.size() == 6, "generate(4,3) codes are not pairwise distinct");
    for (const auto& code : codes4)
        expect(is_perfect(code).ok, "a generated (4,3) code is not perfect");
    c.note = "4 of 4 at (7,2); 6 of 6 at (4,3); counts match the bounds exactly";
    c.pass = true;
}

void c4_large_desk_case(Criterion& c) {
    const FieldTable F = field_make(3);
    const int builds = 20;
    std::vector<Code> codes;
    double worst = 0;
    for (int idx = 0; idx < builds; ++idx) {
        const auto t0 = Clock::now();
        const Assembly A = census_assembly(F, 13, idx, builds);
        expect(A.components.size() == 9, "assembly must have 9 components");
        for (const auto& [mu, K] : A.components)
            expect(K.code.size() == 6561, "component size != 3^8");
        const Code code = combine(F, A, {.verify_components = true, .threads = 2});
        const double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        expect(dt < 60.0, "assembly " + std::to_string(idx) + " took " + std::to_string(dt) +
                              " s (limit 60)");
        expect(code.size() == 59049, "|C| != 3^10");
        codes.push_back(code);
    }
    std::set<Code> uniq(codes.begin(), codes.end());
    expect(uniq.size() == codes.size(), "assemblies are not pairwise distinct");
    std::ostringstream note;
    note << builds << " assemblies, all covering-checked over 3^13, worst build+verify "
         << std::fixed << std::setprecision(2) << worst << "s";
    c.note = note.str();
    c.pass = true;
}

void c5_decomposition_round_trip(Criterion& c) {
    BinaryPieces B;
    const FieldTable F3 = field_make(3);
    struct Entry {
        const FieldTable* F;
        Code code;
        std::string name;
    };
    std::vector<Entry> corpus;
    corpus.push_back({&B.F, hamming_code(B.F, 3), "hamming(2,3)"});
    corpus.push_back({&F3, hamming_code(F3, 2), "hamming(3,2)"});
    corpus.push_back({&B.F, nonlinear7(B), "nonlinear7"});
    expect(rank(B.F, corpus[2].code) == 5, "nonlinear7 should have rank 5");

    int trips = 0;
    for (const auto& entry : corpus) {
        const int n = entry.code.n;
        const int m = *m_for_length(entry.F->q, n);
        const int rk = rank(*entry.F, entry.code);
        expect(n - rk >= 1, entry.name + " admits no r");
        for (int r = 1; r <= n - rk && r < m; ++r) {
            const Decomposition D = decompose(*entry.F, entry.code, r);
            const Code psiC = apply_monomial(D.psi, *entry.F, entry.code);
            expect(combine(*entry.F, D.to_assembly()) == psiC,
                   entry.name + " r=" + std::to_string(r) + ": combine != psi(C)");
            const auto chk = decomposition_verify(*entry.F, D, entry.code);
            expect(chk.ok, entry.name + " r=" + std::to_string(r) + ": " + chk.failed + " — " +
                               chk.detail);
            ++trips;
        }
    }
    c.note = std::to_string(trips) + " (code, r) round trips, all structural checks exhaustive, 0 violations";
    c.pass = true;
}

void c6_cardinality_identities(Criterion& c) {
    BinaryPieces B;
    const FieldTable F3 = field_make(3);
    int checked = 0;

    auto check_decomposition = [&](const FieldTable& F, const Code& code, int r) {
        const Decomposition D = decompose(F, code, r);
        const auto& L = D.layout;
        expect(D.outer.size() == ipow(L.q, L.t - L.r), "|C*| != q^{t-r}");
        std::size_t total = 0;
        for (const auto& [mu, K] : D.components) {
            expect(K.code.size() == ipow(L.q, L.n - L.m - (L.t - L.r)),
                   "|K_mu| != q^{n-m-(t-r)}");
            total += K.code.size();
        }
        expect(total == ipow(L.q, L.n - L.m), "sum |K_mu| != q^{n-m}");
        expect(total == code.size(), "sum |K_mu| != |C|");
        ++checked;
    };
    check_decomposition(B.F, hamming_code(B.F, 3), 1);
    check_decomposition(B.F, hamming_code(B.F, 3), 2);
    check_decomposition(F3, hamming_code(F3, 2), 1);
    check_decomposition(B.F, nonlinear7(B), 2);

    // assemblies from the census stream
    for (int idx : {0, 1}) {
        const Assembly A = census_assembly(F3, 13, idx, 2);
        const auto& L = A.layout;
        expect(A.outer.size() == ipow(3, L.t - L.r), "census |C*| != q^{t-r}");
        std::size_t total = 0;
        for (const auto& [mu, K] : A.components) {
            expect(K.code.size() == ipow(3, L.n - L.m - (L.t - L.r)),
                   "census |K_mu| != q^{n-m-(t-r)}");
            total += K.code.size();
        }
        expect(total == ipow(3, L.n - L.m), "census sum != q^{n-m}");
        ++checked;
    }
    c.note = std::to_string(checked) + " decompositions/assemblies, all three identities hold";
    c.pass = true;
}

void c7_rank_bound(Criterion& c) {
    BinaryPieces B;
    const auto pool2 = qg_first(3, 2, 2);
    int checked = 0;

    // (q=2, n=7, r=2): all four census assemblies plus a shifted-swap one
    const FieldTable F2 = field_make(2);
    for (int idx = 0; idx < 4; ++idx) {
        const Assembly A = census_assembly(F2, 7, idx, 4);
        expect(assembly_rank_bound_check(F2, A), "(2,7) assembly rank > n-r");
        ++checked;
    }
    {
        const auto K0 = build_phelps(B.F, parse_word("000", 2), B.parts, B.id, B.id, B.V, pool2[1]);
        const auto other = build_phelps(B.F, parse_word("000", 2), B.parts, B.id, B.id, B.V, pool2[0]);
        const auto K1 = component_shift(B.F, other, parse_word("111", 2));
        const Assembly mixed = Assembly::of(B.outer, {K0, K1});
        expect(assembly_rank_bound_check(B.F, mixed), "component-swapped (2,7) rank > n-r");
        const int rk = assembly_rank(B.F, mixed);
        expect(rk == 5, "swapped assembly rank " + std::to_string(rk) + " != 5");
        ++checked;
    }

    // (q=3, n=13, r=2): census assemblies including component swaps
    const FieldTable F3 = field_make(3);
    for (int idx : {0, 1, 2, 47, 48}) { // 48 changes the second component's digit
        const Assembly A = census_assembly(F3, 13, idx, 49);
        expect(A.layout.r == 2, "census layout r != 2");
        expect(assembly_rank_bound_check(F3, A), "(3,13) assembly rank > n-r = 11");
        ++checked;
    }
    c.note = std::to_string(checked) + " linear-sigma assemblies, every rank <= n-r";
    c.pass = true;
}

void c8_route_agreement(Criterion& c) {
    BinaryPieces B;
    int compared = 0;
    // (q=2, k=1, t=3): both constructions, both mu values, both 3-ary Qs
    for (const std::string mu : {"000", "111"}) {
        const Word w = parse_word(mu, 2);
        const auto a = build_mollard_phelps(B.F, w, B.czero, B.id, B.id, B.V, B.H,
                                            BuildRoute::filter);
        const auto b = build_mollard_phelps(B.F, w, B.czero, B.id, B.id, B.V, B.H,
                                            BuildRoute::solve);
        expect(a.code == b.code, "mollard routes disagree at mu=" + mu);
        ++compared;
        for (const auto& Q : qg_first(3, 2, 2)) {
            const auto pf = build_phelps(B.F, w, B.parts, B.id, B.id, B.V, Q, BuildRoute::filter);
            const auto ps = build_phelps(B.F, w, B.parts, B.id, B.id, B.V, Q, BuildRoute::solve);
            expect(pf.code == ps.code, "phelps routes disagree at mu=" + mu);
            ++compared;
        }
    }
    // (q=3, k=1, t=1): all mu, all six 1-ary Qs, plus mollard over all csharp
    const FieldTable F3 = field_make(3);
    const auto v3 = qg_linear(F3, 2, Word{1, 1}, 0);
    const auto h3 = qg_linear(F3, 2, Word{1, 2}, 0);
    const std::vector<MultaryQuasigroup> V3{qg_linear(F3, 2, Word{1, 1}, 0)};
    const std::vector<MultaryQuasigroup> H3{qg_linear(F3, 2, Word{1, 1}, 0)};
    const std::vector<PerfectPartition> parts3(2, perfect_partition(F3, 1));
    for (Sym mu = 0; mu < 3; ++mu) {
        for (const auto& Q : qg_first(1, 3, 6)) {
            const auto pf = build_phelps(F3, Word{mu}, parts3, v3, h3, V3, Q, BuildRoute::filter);
            const auto ps = build_phelps(F3, Word{mu}, parts3, v3, h3, V3, Q, BuildRoute::solve);
            expect(pf.code == ps.code, "phelps routes disagree at q=3");
            ++compared;
        }
        for (Sym cs = 0; cs < 3; ++cs) {
            const Code csharp = Code::from_rows(3, 1, {cs});
            const auto mf = build_mollard_phelps(F3, Word{mu}, csharp, v3, h3, V3, H3,
                                                 BuildRoute::filter);
            const auto ms = build_mollard_phelps(F3, Word{mu}, csharp, v3, h3, V3, H3,
                                                 BuildRoute::solve);
            expect(mf.code == ms.code, "mollard routes disagree at q=3");
            ++compared;
        }
    }
    c.note = std::to_string(compared) + " builder inputs, filter and solve sets identical";
    c.pass = true;
}

void c9_bound_report(Criterion& c) {
    const BoundReport rep = lower_bound(13, 3);
    std::uint64_t want = 1;
    for (int i = 0; i < 9; ++i) want *= 48;
    expect(rep.qcount == 48, "Q(4,3) != 48");
    expect(rep.R == 9, "R != 9");
    expect(rep.bound.to_string() == std::to_string(want), "bound != 48^9");
    expect(rep.sphere_denom == 9, "sphere denominator != 9");
    expect(rep.printed_denom == 10, "printed denominator != 10");
    expect(rep.printed_denom != rep.sphere_denom, "diagnostic must be present");
    expect(!rep.printed_R_integral, "printed R should be non-integral at (13,3)");
    c.note = "bound = 48^9 = " + rep.bound.to_string() + ", R-denominator diagnostic present";
    c.pass = true;
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<void(Criterion&)>>> table{
        {"Hamming perfectness over six (q,m) cases", c1_hamming_perfect},
        {"exact quasigroup counts", c2_quasigroup_counts},
        {"combining construction matches the bound at (7,2) and (4,3)", c3_exhaustive_generation},
        {"20 distinct assemblies at q=3, n=13, covering-checked", c4_large_desk_case},
        {"decomposition round trips, fully re-verified", c5_decomposition_round_trip},
        {"cardinality identities", c6_cardinality_identities},
        {"rank bound for linear-sigma assemblies", c7_rank_bound},
        {"filter/solve builder agreement", c8_route_agreement},
        {"exact bound report at (13,3)", c9_bound_report},
    };

    std::printf("acceptance: kernel=%s\n", kernels::active().name);
    int failures = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        Criterion c;
        c.id = static_cast<int>(i) + 1;
        c.title = table[i].first;
        const auto t0 = Clock::now();
        try {
            table[i].second(c);
        } catch (const Fail& f) {
            c.pass = false;
            c.note = f.what;
        } catch (const std::exception& e) {
            c.pass = false;
            c.note = std::string("exception: ") + e.what();
        }
        c.secs = seconds_since(t0);
        std::printf("[%s] criterion %d: %s (%.2fs) %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), c.secs, c.note.c_str());
        if (!c.pass) ++failures;
    }
    if (failures == 0) std::printf("ACCEPTANCE: all %zu criteria passed\n", table.size());
    else std::printf("ACCEPTANCE: %d of %zu criteria FAILED\n", failures, table.size());
    return failures == 0 ? 0 : 1;
}
