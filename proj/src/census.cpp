#include "muq/census.hpp"

#include "muq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace muq {

namespace {

std::uint64_t modexp(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

bool qg_count_feasible(int m, int order) {
    switch (order) {
        case 2: return m <= 6;
        case 3: return m <= 3;
        case 4: return m <= 2;
        case 5:
        case 6: return m == 1;
        default: return false;
    }
}

// Q(t, q): enumerated when the backtracking cap allows, otherwise by the
// closed forms Q(m, 2) = 2 and Q(m, 3) = 3 * 2^m. For orders >= 4 the
// counts grow doubly exponentially in the arity and only asymptotic
// bounds are known; no closed form is attempted (TooLarge instead).
std::pair<std::uint64_t, BoundReport::Source> quasigroup_count(int t, int q) {
    if (qg_count_feasible(t, q)) return {qg_count(t, q), BoundReport::Source::enumerated};
    if (q == 2) return {2, BoundReport::Source::formula};
    if (q == 3) {
        require(t <= 61, Err::TooLarge, "Q(t,3) overflows");
        return {3ull << t, BoundReport::Source::formula};
    }
    fail(Err::TooLarge, "Q(" + std::to_string(t) + "," + std::to_string(q) +
                            ") is neither enumerable nor covered by a closed form");
}

} // namespace

BoundReport lower_bound(int n, int q) {
    require(q >= 2 && q <= 16, Err::BadLength, "q out of range");
    const auto m = m_for_length(q, n);
    require(m.has_value() && *m >= 2, Err::BadLength,
            "n=" + std::to_string(n) + " is not (q^m-1)/(q-1) for any m >= 2");
    BoundReport rep;
    rep.n = n;
    rep.q = q;
    rep.t = (n - 1) / q; // = (q^{m-1}-1)/(q-1), an admissible length itself

    const auto [qc, src] = quasigroup_count(rep.t, q);
    rep.qcount = qc;
    rep.provenance = src;

    rep.sphere_denom = 1 + static_cast<std::int64_t>(rep.t) * (q - 1);
    rep.printed_denom = static_cast<std::int64_t>(rep.t) * q - q + 1;

    // R = q^t / (1 + t(q-1)) = q^{t - (m-1)}
    const int exp = rep.t - (*m - 1);
    require(exp >= 0, Err::BadLength, "inadmissible t");
    require(exp * std::log2(static_cast<double>(q)) <= 40.0, Err::TooLarge, "R too large");
    rep.R = static_cast<std::int64_t>(ipow(q, exp));
    require(static_cast<double>(rep.R) * std::log2(static_cast<double>(std::max<std::uint64_t>(rep.qcount, 2))) <=
                1e6,
            Err::TooLarge, "bound exceeds the exact-integer cap");
    rep.bound = BigUint::pow(rep.qcount, static_cast<std::uint64_t>(rep.R));

    // the printed denominator tq - q + 1 usually disagrees with the sphere
    // size; report what it would give
    rep.printed_R_integral =
        modexp(q, rep.t, static_cast<std::uint64_t>(rep.printed_denom)) == 0;
    if (rep.printed_R_integral && rep.t * std::log2(static_cast<double>(q)) <= 62.0)
        rep.printed_R = static_cast<std::int64_t>(ipow(q, rep.t)) / rep.printed_denom;
    return rep;
}

namespace {

struct CensusPlan {
    BoundReport rep;
    Code outer;
    int t = 0;
    // fixed construction pieces (k = 1)
    MultaryQuasigroup v, h;
    std::vector<MultaryQuasigroup> V;
    std::vector<PerfectPartition> partitions;
    std::vector<MultaryQuasigroup> pool; // t-ary quasigroups of order q
};

CensusPlan census_plan(const FieldTable& F, int n, std::uint64_t pool_size) {
    CensusPlan plan;
    plan.rep = lower_bound(n, F.q);
    plan.t = plan.rep.t;
    const int q = F.q;
    const int m = *m_for_length(q, n);
    plan.outer = hamming_code(F, m - 1);
    require(static_cast<std::int64_t>(plan.outer.size()) == plan.rep.R, Err::StructureViolation,
            "outer cardinality != R");

    Word vcoef(q - 1, 1);
    plan.v = qg_linear(F, q - 1, vcoef, 0);
    Word hcoef(q - 1);
    for (int i = 0; i < q - 1; ++i) hcoef[i] = static_cast<Sym>(i + 1);
    plan.h = qg_linear(F, q - 1, hcoef, 0);
    plan.V.assign(plan.t, qg_sum(F, 2));
    plan.partitions.assign(plan.t + 1, perfect_partition(F, 1));
    plan.pool = qg_first(plan.t, q, std::min<std::uint64_t>(pool_size, plan.rep.qcount));
    return plan;
}

MuComponent census_component(const FieldTable& F, const CensusPlan& plan, std::size_t outer_idx,
                             std::size_t pool_idx) {
    const Word mu = plan.outer.word_at(outer_idx);
    MuComponent K = build_phelps(F, mu, plan.partitions, plan.v, plan.h, plan.V,
                                 plan.pool[pool_idx]);
    const auto chk = component_verify(K);
    require(chk.ok, Err::StructureViolation, "census component failed verification: " + chk.detail);
    return K;
}

std::vector<std::size_t> assignment_digits(std::uint64_t idx, std::uint64_t base, std::size_t count) {
    std::vector<std::size_t> digits(count, 0);
    for (std::size_t i = 0; i < count && idx; ++i) {
        digits[i] = static_cast<std::size_t>(idx % base);
        idx /= base;
    }
    return digits;
}

} // namespace

Assembly census_assembly(const FieldTable& F, int n, std::uint64_t idx, std::uint64_t limit_hint) {
    CensusPlan plan = census_plan(F, n, std::max<std::uint64_t>(limit_hint, idx + 1));
    const auto digits = assignment_digits(idx, plan.rep.qcount, plan.outer.size());
    std::vector<MuComponent> comps;
    for (std::size_t ci = 0; ci < plan.outer.size(); ++ci) {
        require(digits[ci] < plan.pool.size(), Err::TooLarge, "assignment index out of pool");
        comps.push_back(census_component(F, plan, ci, digits[ci]));
    }
    return Assembly::of(plan.outer, std::move(comps));
}

std::vector<Code> generate_distinct_codes(const FieldTable& F, int n, int q, std::uint64_t limit,
                                          int threads) {
    require(q == F.q, Err::LayoutMismatch, "field and q disagree");
    // saturating Qcount^R
    BoundReport probe = lower_bound(n, q);
    std::uint64_t total = 1;
    for (std::int64_t i = 0; i < probe.R; ++i) {
        if (total > (1ull << 62) / std::max<std::uint64_t>(probe.qcount, 1)) {
            total = 1ull << 62;
            break;
        }
        total *= probe.qcount;
    }
    std::uint64_t count;
    if (limit == 0) {
        require(total <= 4096, Err::TooLarge,
                "exhaustive generation of " + std::to_string(total) + " codes refused");
        count = total;
    } else {
        count = std::min(limit, total);
    }

    CensusPlan plan = census_plan(F, n, count);
    const std::size_t R = plan.outer.size();

    // distinct (component, pool) pairs used by the first `count` assignments
    std::map<std::pair<std::size_t, std::size_t>, MuComponent> cache;
    std::vector<std::vector<std::size_t>> all_digits(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        all_digits[idx] = assignment_digits(idx, plan.rep.qcount, R);
        for (std::size_t ci = 0; ci < R; ++ci)
            cache.emplace(std::make_pair(ci, all_digits[idx][ci]), MuComponent{});
    }
    {
        std::vector<std::map<std::pair<std::size_t, std::size_t>, MuComponent>::iterator> slots;
        for (auto it = cache.begin(); it != cache.end(); ++it) slots.push_back(it);
        parallel_for(slots.size(), threads, [&](std::size_t i) {
            slots[i]->second = census_component(F, plan, slots[i]->first.first, slots[i]->first.second);
        });
    }

    std::vector<Code> out(count);
    const auto& built = cache;
    parallel_for(count, threads, [&](std::size_t idx) {
        std::vector<MuComponent> comps;
        comps.reserve(R);
        for (std::size_t ci = 0; ci < R; ++ci)
            comps.push_back(built.at({ci, all_digits[idx][ci]}));
        const Assembly A = Assembly::of(plan.outer, std::move(comps));
        out[idx] = combine(F, A, {.verify_components = false, .threads = 1});
    });
    return out;
}

} // namespace muq
