#ifndef MUQ_DECOMPOSER_HPP
#define MUQ_DECOMPOSER_HPP

#include "muq/combiner.hpp"

#include <map>

namespace muq {

// Structural decomposition of a non-full-rank perfect code: a monomial
// transform psi, the block layout, the outer Hamming code, one component
// per profile value, and per-prefix inner codes.
struct Decomposition {
    MonomialTransform psi;
    CodeParameters layout;
    ParityCheckMatrix Hstar;
    Code outer;
    std::vector<std::pair<Word, MuComponent>> components; // sorted by mu
    // inner[i]: prefix (length l*t) -> code of admissible tails (length n0),
    // parallel to components
    std::vector<std::map<Word, Code>> inner;

    Assembly to_assembly() const;
};

// Requires is_perfect(C) (NotPerfect) and 1 <= r <= n - rank(C)
// (RankTooHigh above, LayoutMismatch for r < 1 or r >= m). The dual-basis
// column multiplicities are asserted (StructureViolation on failure, which
// signals a bug or a non-perfect input). Deterministic: the subspace D is
// the span extended by standard basis vectors, lowest index first.
Decomposition decompose(const FieldTable& F, const Code& C, int r);

struct DecompCheck {
    bool ok = false;
    // one of "psi", "union", "outer", "separation" (component cross
    // distance), "law", "inner" (inner-table consistency/perfectness),
    // "inner_disjoint" (close prefixes), "cardinality"
    std::string failed;
    Word witness;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    // Inner-disjointness prefix pairs are exhaustive when q^{l*t} <= 2^22,
    // otherwise >= min_sampled_pairs random pairs; same policy for
    // component separation when a cross product exceeds 2^26 word pairs.
    std::uint64_t min_sampled_pairs = 100000;
    int threads = 1;
};

// Re-checks every Decomposition invariant from scratch against C.
DecompCheck decomposition_verify(const FieldTable& F, const Decomposition& D, const Code& C,
                                 VerifyOptions opts = {});

} // namespace muq

#endif
