#ifndef MUQ_CENSUS_HPP
#define MUQ_CENSUS_HPP

#include "muq/bigint.hpp"
#include "muq/combiner.hpp"

namespace muq {

// Lower bound Q(t, q)^R on the number of perfect codes of length n, with
// t = (n-1)/q and R = |perfect code of length t| = q^t / (1 + t(q-1)).
// R is sometimes quoted with the denominator tq - q + 1 instead, which
// disagrees with the sphere size (at t = 1, q = 3 it would give R = 3,
// but a length-1 perfect code has a single word); both readings are
// carried so callers can surface the discrepancy.
struct BoundReport {
    int n = 0;
    int q = 0;
    int t = 0;
    std::uint64_t qcount = 0; // Q(t, q)
    std::int64_t R = 0;       // with the sphere-size denominator
    BigUint bound;            // qcount^R, exact
    enum class Source { enumerated, formula } provenance = Source::enumerated;

    std::int64_t sphere_denom = 0;  // 1 + t(q-1)
    std::int64_t printed_denom = 0; // tq - q + 1
    bool printed_R_integral = false;
    std::int64_t printed_R = 0; // q^t / printed_denom, when integral
};

// BadLength unless n = (q^m-1)/(q-1) for some m >= 2 and t is itself an
// admissible perfect-code length; TooLarge when Q(t, q) is out of reach
// (no enumeration cap fits and no closed form applies) or the bound would
// exceed ~10^6 bits.
BoundReport lower_bound(int n, int q);

// Instantiates the bound constructively: k = 1, one generalized Phelps
// component per outer codeword, the t-ary quasigroup chosen independently
// per component from the deterministic enumeration stream. limit = 0
// builds all Q(t,q)^R codes (TooLarge above 4096); otherwise the first
// `limit` assignments in mixed-radix order. Every returned code passed the
// covering check; distinct assignments give distinct codes.
std::vector<Code> generate_distinct_codes(const FieldTable& F, int n, int q, std::uint64_t limit,
                                          int threads = 1);

// The assembly behind assignment index `idx` of the same deterministic
// stream (exposed for rank-bound and component-swap experiments).
Assembly census_assembly(const FieldTable& F, int n, std::uint64_t idx,
                         std::uint64_t limit_hint = 64);

} // namespace muq

#endif
