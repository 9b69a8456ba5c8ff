#include "muq/combiner.hpp"

#include "muq/parallel.hpp"

#include <algorithm>

namespace muq {

Assembly Assembly::of(Code outer, std::vector<MuComponent> comps) {
    Assembly A;
    A.outer = std::move(outer);
    require(!comps.empty(), Err::LayoutMismatch, "assembly needs components");
    A.layout = comps.front().layout;
    A.sigma = comps.front().sigma;
    for (auto& K : comps) A.components.emplace_back(K.mu, std::move(K));
    std::sort(A.components.begin(), A.components.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return A;
}

Code assembly_union(const Assembly& A) {
    std::vector<Sym> rows;
    for (const auto& [mu, K] : A.components)
        rows.insert(rows.end(), K.code.flat.begin(), K.code.flat.end());
    return Code::from_rows(A.layout.q, A.layout.n, std::move(rows));
}

Code combine(const FieldTable& F, const Assembly& A, CombineOptions opts) {
    const auto& L = A.layout;
    require(L.combinable(), Err::LayoutMismatch,
            "assembly layout is not a combinable (q, m, r) layout");
    require(L.q == F.q, Err::LayoutMismatch, "field and layout disagree on q");
    require(A.outer.q == L.q && A.outer.n == L.t, Err::LayoutMismatch,
            "outer code must have length t over GF(q)");
    require(A.components.size() == A.outer.size(), Err::LayoutMismatch,
            "need exactly one component per outer word");

    for (std::size_t i = 0; i < A.components.size(); ++i) {
        const auto& [mu, K] = A.components[i];
        require(K.mu == mu, Err::LayoutMismatch, "component key differs from its mu");
        require(A.outer.contains(mu), Err::LayoutMismatch,
                "mu=" + format_word(mu) + " is not an outer codeword");
        require(i == 0 || A.components[i - 1].first < mu, Err::LayoutMismatch,
                "duplicate component for mu=" + format_word(mu));
        require(K.layout == L, Err::LayoutMismatch,
                "component mu=" + format_word(mu) + " has a different layout");
        require(K.sigma == A.sigma, Err::LayoutMismatch,
                "component mu=" + format_word(mu) + " has a different sigma family");
    }

    {
        const auto pc = is_perfect(A.outer);
        require(pc.ok, Err::OuterNotPerfect, pc.detail);
    }

    if (opts.verify_components) {
        std::vector<ComponentCheck> checks(A.components.size());
        parallel_for(A.components.size(), opts.threads,
                     [&](std::size_t i) { checks[i] = component_verify(A.components[i].second); });
        for (std::size_t i = 0; i < checks.size(); ++i)
            require(checks[i].ok, Err::ComponentLawViolation,
                    "component mu=" + format_word(A.components[i].first) + ": " + checks[i].detail);
    }

    // cheap cardinality identity first, covering check second
    const std::uint64_t want = ipow(L.q, L.n - L.m);
    std::uint64_t total = 0;
    for (const auto& [mu, K] : A.components) total += K.code.size();
    require(total == want, Err::NotPerfectResult,
            "component sizes sum to " + std::to_string(total) + ", expected q^(n-m) = " +
                std::to_string(want));
    Code u = assembly_union(A);
    require(u.size() == want, Err::NotPerfectResult, "components are not pairwise disjoint");

    const auto pc = is_perfect(u);
    require(pc.ok, Err::NotPerfectResult, pc.detail);
    return u;
}

int assembly_rank(const FieldTable& F, const Assembly& A) {
    return rank(F, assembly_union(A));
}

bool assembly_rank_bound_check(const FieldTable& F, const Assembly& A) {
    for (int i = 0; i < A.sigma.t; ++i) {
        const auto lin = linear_form(F, A.sigma.sigmas[i]);
        require(lin.has_value() && lin->second == 0, Err::NonlinearSigma,
                "sigma_" + std::to_string(i + 1) + " is not linear with zero constant");
    }
    require(A.layout.combinable(), Err::LayoutMismatch, "layout has no r");
    return assembly_rank(F, A) <= A.layout.n - A.layout.r;
}

} // namespace muq
