#ifndef MUQ_COMBINER_HPP
#define MUQ_COMBINER_HPP

#include "muq/components.hpp"

namespace muq {

// The combining construction: an outer perfect code C* of length t and one
// mu-component per outer word, all sharing layout and sigma family.
struct Assembly {
    Code outer;
    std::vector<std::pair<Word, MuComponent>> components; // sorted by mu
    CodeParameters layout;
    SigmaFamily sigma;

    static Assembly of(Code outer, std::vector<MuComponent> comps);
};

struct CombineOptions {
    // Re-run component_verify on every component. Callers that verified
    // their components at construction time may skip it; the cardinality
    // and covering checks of the union always run.
    bool verify_components = true;
    int threads = 1;
};

// The union, verified: every component passes component_verify
// (ComponentLawViolation), the outer code is perfect (OuterNotPerfect),
// layouts and sigma families agree (LayoutMismatch), and the union itself
// passes the cardinality and covering checks (NotPerfectResult, with the
// certificate in the message).
Code combine(const FieldTable& F, const Assembly& A, CombineOptions opts = {});

// Plain union of the component codes (no verification).
Code assembly_union(const Assembly& A);

int assembly_rank(const FieldTable& F, const Assembly& A);

// rank(union) <= n - r; requires every sigma_i linear with zero constant
// (NonlinearSigma).
bool assembly_rank_bound_check(const FieldTable& F, const Assembly& A);

} // namespace muq

#endif
