#include "muq/decomposer.hpp"

#include "muq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace muq {

Assembly Decomposition::to_assembly() const {
    Assembly A;
    A.outer = outer;
    A.components = components;
    A.layout = layout;
    if (!components.empty()) A.sigma = components.front().second.sigma;
    return A;
}

namespace {

Code inner_from_range(const Code& c, std::size_t begin, std::size_t end, int plen) {
    std::vector<Sym> rows;
    const int n0 = c.n - plen;
    rows.reserve((end - begin) * n0);
    for (std::size_t i = begin; i < end; ++i) {
        const auto w = c.row(i);
        rows.insert(rows.end(), w.begin() + plen, w.end());
    }
    return Code::from_rows(c.q, n0, std::move(rows));
}

// All sum-preserving two-coordinate modifications of `prefix` inside one
// block: positions a < b in the block, value delta added at a and -delta
// at b. These are exactly the distance-2 prefix neighbors with the same
// linear profile.
template <typename Fn>
void for_each_profile_preserving_neighbor(const FieldTable& F, const CodeParameters& L,
                                           std::span<const Sym> prefix, Word& scratch,
                                           const Fn& fn) {
    scratch.assign(prefix.begin(), prefix.end());
    for (int i = 0; i < L.t; ++i) {
        const int base = i * L.l;
        for (int a = 0; a < L.l; ++a) {
            for (int b = a + 1; b < L.l; ++b) {
                for (int d = 1; d < L.q; ++d) {
                    const Sym delta = static_cast<Sym>(d);
                    scratch[base + a] = F.add(prefix[base + a], delta);
                    scratch[base + b] = F.sub(prefix[base + b], delta);
                    fn(scratch);
                }
                scratch[base + b] = prefix[base + b];
            }
            scratch[base + a] = prefix[base + a];
        }
    }
}

} // namespace

Decomposition decompose(const FieldTable& F, const Code& C, int r) {
    const int q = C.q, n = C.n;
    require(q == F.q, Err::LayoutMismatch, "field and code disagree on q");
    require(C.size() >= 1, Err::Empty, "cannot decompose an empty code");
    const auto m_opt = m_for_length(q, n);
    require(m_opt.has_value(), Err::BadLength,
            "n=" + std::to_string(n) + " is not an admissible perfect-code length");
    const int m = *m_opt;
    {
        const auto pc = is_perfect(C);
        require(pc.ok, Err::NotPerfect, pc.detail);
    }
    const int rk = rank(F, C);
    require(r >= 1, Err::LayoutMismatch, "need r >= 1, got r=" + std::to_string(r));
    require(r <= n - rk, Err::RankTooHigh,
            "r=" + std::to_string(r) + " exceeds n - rank(C) = " + std::to_string(n - rk));
    require(r < m, Err::LayoutMismatch,
            "need r < m, got r=" + std::to_string(r) + ", m=" + std::to_string(m));

    // 1. D: span of C extended by standard basis vectors, lowest index first
    EchelonBasis D(F, n);
    for (std::size_t i = 0; i < C.size(); ++i) D.insert(C.word_at(i));
    for (int i = 0; i < n && D.dim() < n - r; ++i) {
        Word e(n, 0);
        e[i] = 1;
        D.insert(std::move(e));
    }
    require(D.dim() == n - r, Err::StructureViolation, "could not extend span to dimension n-r");

    // 2. dual of D, reduced echelon form
    std::vector<bool> is_pivot(n, false);
    for (int p : D.pivots()) is_pivot[p] = true;
    EchelonBasis M(F, n);
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Word y(n, 0);
        y[f] = 1;
        for (int k = 0; k < D.dim(); ++k) y[D.pivots()[k]] = F.neg(D.rows()[k][f]);
        M.insert(std::move(y));
    }
    require(M.dim() == r, Err::StructureViolation, "dual space has wrong dimension");

    // 3. group columns of M by normalized projective point
    const CodeParameters layout = CodeParameters::from_mr(q, m, r);
    std::map<Word, std::vector<int>> groups;
    std::vector<int> zero_cols;
    std::vector<Sym> col_scale(n, 1);
    for (int i = 0; i < n; ++i) {
        Word col(r, 0);
        for (int k = 0; k < r; ++k) col[k] = M.rows()[k][i];
        int lead = 0;
        while (lead < r && col[lead] == 0) ++lead;
        if (lead == r) {
            zero_cols.push_back(i);
            continue;
        }
        const Sym a = col[lead];
        const Sym ainv = F.inv(a);
        for (int k = 0; k < r; ++k) col[k] = F.mul(ainv, col[k]);
        col_scale[i] = a;
        groups[col].push_back(i);
    }
    require(static_cast<int>(groups.size()) == layout.t, Err::StructureViolation,
            "expected t=" + std::to_string(layout.t) + " distinct column points, found " +
                std::to_string(groups.size()));
    for (const auto& [pt, cols] : groups)
        require(static_cast<int>(cols.size()) == layout.l, Err::StructureViolation,
                "column point " + format_word(pt) + " has multiplicity " +
                    std::to_string(cols.size()) + ", expected l=" + std::to_string(layout.l));
    require(static_cast<int>(zero_cols.size()) == layout.n0, Err::StructureViolation,
            "expected n0=" + std::to_string(layout.n0) + " zero columns, found " +
                std::to_string(zero_cols.size()));

    // 4. psi: point groups in lexicographic point order, stable within a
    // group, zero columns last; scale normalizes each column's lead to 1
    Decomposition out;
    out.layout = layout;
    out.psi.perm.assign(n, 0);
    out.psi.scale.assign(n, 1);
    {
        int pos = 0;
        for (const auto& [pt, cols] : groups) {
            for (int orig : cols) {
                out.psi.perm[orig] = pos;
                out.psi.scale[pos] = col_scale[orig];
                ++pos;
            }
        }
        for (int orig : zero_cols) {
            out.psi.perm[orig] = pos;
            out.psi.scale[pos] = 1;
            ++pos;
        }
    }

    // 5. outer code: null space of H* on the t distinct points
    out.Hstar = parity_check_matrix(q, r);
    {
        auto it = groups.begin();
        for (int i = 0; i < layout.t; ++i, ++it)
            require(it->first == out.Hstar.columns[i], Err::StructureViolation,
                    "column points are not the full projective set");
    }
    out.outer = hamming_code(F, r);

    // 6. partition psi(C) by the linear blockwise profile
    const Code psiC = apply_monomial(out.psi, F, C);
    const SigmaFamily sigma = SigmaFamily::linear_sums(F, layout.t, layout.l);
    std::map<Word, std::vector<Sym>> comp_rows;
    for (std::size_t i = 0; i < psiC.size(); ++i) {
        const auto w = psiC.row(i);
        const Word mu = sigma_profile(w, layout, sigma);
        require(out.outer.contains(mu), Err::StructureViolation,
                "profile " + format_word(mu) + " of a codeword is not an outer codeword");
        auto& rows = comp_rows[mu];
        rows.insert(rows.end(), w.begin(), w.end());
    }
    require(comp_rows.size() == out.outer.size(), Err::StructureViolation,
            "some outer codeword has an empty component");
    for (auto& [mu, rows] : comp_rows) {
        MuComponent K;
        K.mu = mu;
        K.layout = layout;
        K.sigma = sigma;
        K.code = Code::from_rows(q, n, std::move(rows));
        // inner tables by prefix grouping (rows are lex-sorted)
        std::map<Word, Code> table;
        const int plen = layout.l * layout.t;
        std::size_t i = 0;
        while (i < K.code.size()) {
            std::size_t j = i;
            while (j < K.code.size() &&
                   std::memcmp(K.code.flat.data() + i * n, K.code.flat.data() + j * n, plen) == 0)
                ++j;
            const auto w = K.code.row(i);
            table.emplace(Word(w.begin(), w.begin() + plen), inner_from_range(K.code, i, j, plen));
            i = j;
        }
        out.inner.push_back(std::move(table));
        out.components.emplace_back(mu, std::move(K));
    }

    // 7. full invariant pass
    const auto chk = decomposition_verify(F, out, C);
    require(chk.ok, Err::StructureViolation, "decomposition invariant failed: " + chk.detail);
    return out;
}

DecompCheck decomposition_verify(const FieldTable& F, const Decomposition& D, const Code& C,
                                 VerifyOptions opts) {
    DecompCheck res;
    auto failed = [&res](const std::string& what, const std::string& detail, Word witness = {}) {
        res.ok = false;
        res.failed = what;
        res.detail = detail;
        res.witness = std::move(witness);
        return res;
    };

    const auto& L = D.layout;
    const int n = L.n, q = L.q;
    if (C.n != n || C.q != q) return failed("psi", "layout does not match the code");
    if (!L.combinable()) return failed("psi", "layout is not a (q, m, r) layout");

    // psi well-formed
    {
        if (static_cast<int>(D.psi.perm.size()) != n || static_cast<int>(D.psi.scale.size()) != n)
            return failed("psi", "psi has wrong length");
        std::vector<bool> seen(n, false);
        for (int i = 0; i < n; ++i) {
            const int p = D.psi.perm[i];
            if (p < 0 || p >= n || seen[p]) return failed("psi", "perm is not a bijection");
            seen[p] = true;
            if (D.psi.scale[i] == 0) return failed("psi", "zero scale entry");
        }
    }

    // union equals psi(C)
    const Code psiC = apply_monomial(D.psi, F, C);
    {
        std::vector<Sym> rows;
        for (const auto& [mu, K] : D.components)
            rows.insert(rows.end(), K.code.flat.begin(), K.code.flat.end());
        const Code u = Code::from_rows(q, n, std::move(rows));
        if (!(u == psiC)) return failed("union", "component union differs from psi(C)");
        std::size_t total = 0;
        for (const auto& [mu, K] : D.components) total += K.code.size();
        if (total != u.size()) return failed("union", "components are not pairwise disjoint");
    }

    // outer: perfect null space of the canonical H*
    {
        if (D.outer.q != q || D.outer.n != L.t) return failed("outer", "outer code has wrong shape");
        const auto pc = is_perfect(D.outer);
        if (!pc.ok) return failed("outer", "outer code not perfect: " + pc.detail, pc.witness);
        if (D.outer.size() != ipow(q, L.t - L.r))
            return failed("cardinality", "|C*| != q^{t-r}");
        for (std::size_t i = 0; i < D.outer.size(); ++i) {
            const Word s = syndrome(D.Hstar, F, D.outer.row(i));
            if (std::any_of(s.begin(), s.end(), [](Sym x) { return x != 0; }))
                return failed("outer", "outer word has nonzero H* syndrome",
                              D.outer.word_at(i));
        }
    }

    const SigmaFamily sigma = SigmaFamily::linear_sums(F, L.t, L.l);
    const std::uint64_t want_comp = ipow(q, L.n - L.m - (L.t - L.r));
    const int plen = L.l * L.t;

    if (D.components.size() != D.outer.size())
        return failed("cardinality", "component count != |C*|");
    if (D.inner.size() != D.components.size())
        return failed("inner", "inner tables missing for some components");

    // Component separation runs before the law check: when the law holds,
    // components of distinct outer words are at distance >= 3 automatically
    // (their profiles already differ in >= 3 blocks), so a separation
    // certificate can only come from mislabeled or merged components.
    {
        const std::size_t comp_count = D.components.size();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < comp_count; ++a)
            for (std::size_t b = a + 1; b < comp_count; ++b) pairs.emplace_back(a, b);
        // no early abort: the reported pair must not depend on the schedule
        std::vector<std::string> bad_detail(pairs.size());
        parallel_for(pairs.size(), opts.threads, [&](std::size_t pi) {
            const auto [a, b] = pairs[pi];
            const Code& ka = D.components[a].second.code;
            const Code& kb = D.components[b].second.code;
            if (ka.size() == 0 || kb.size() == 0) return;
            const double cross = static_cast<double>(ka.size()) * static_cast<double>(kb.size());
            unsigned dist;
            if (cross <= double(1ull << 26)) {
                dist = cross_distance_min(ka, kb, 2);
            } else {
                dist = 3;
                std::mt19937_64 prng(opts.seed ^ (0x9e3779b97f4a7c15ull * (pi + 1)));
                for (std::uint64_t s = 0; s < opts.min_sampled_pairs; ++s) {
                    const auto wa = ka.row(prng() % ka.size());
                    const auto wb = kb.row(prng() % kb.size());
                    dist = std::min(dist, hamming_distance(wa, wb));
                    if (dist < 3) break;
                }
            }
            if (dist < 3)
                bad_detail[pi] = "components " + format_word(D.components[a].first) + " and " +
                                 format_word(D.components[b].first) + " are at distance " +
                                 std::to_string(dist);
        });
        for (const auto& d : bad_detail)
            if (!d.empty()) return failed("separation", d);
    }

    for (std::size_t ci = 0; ci < D.components.size(); ++ci) {
        const auto& [mu, K] = D.components[ci];
        if (!(K.mu == mu) || !D.outer.contains(mu))
            return failed("law", "component key mu=" + format_word(mu) + " invalid");
        if (K.code.size() != want_comp)
            return failed("cardinality",
                          "|K_mu| = " + std::to_string(K.code.size()) + " != q^{n-m-(t-r)} = " +
                              std::to_string(want_comp));
        for (std::size_t i = 0; i < K.code.size(); ++i) {
            const auto w = K.code.row(i);
            if (sigma_profile(w, L, sigma) != mu)
                return failed("law", "word violates the parity-check law",
                              Word(w.begin(), w.end()));
        }
        // stored inner tables match the prefix grouping exactly, and every
        // inner code is a perfect code of length n0
        const auto& table = D.inner[ci];
        std::size_t grouped = 0;
        std::size_t i = 0;
        while (i < K.code.size()) {
            std::size_t j = i;
            while (j < K.code.size() &&
                   std::memcmp(K.code.flat.data() + i * n, K.code.flat.data() + j * n, plen) == 0)
                ++j;
            const auto w = K.code.row(i);
            const Word prefix(w.begin(), w.begin() + plen);
            const auto it = table.find(prefix);
            if (it == table.end())
                return failed("inner", "prefix " + format_word(prefix) + " missing from inner table",
                              prefix);
            if (!(it->second == inner_from_range(K.code, i, j, plen)))
                return failed("inner", "inner code for prefix " + format_word(prefix) +
                                         " differs from the component grouping",
                              prefix);
            const auto pc = is_perfect(it->second);
            if (!pc.ok)
                return failed("inner", "inner code at prefix " + format_word(prefix) +
                                         " is not perfect: " + pc.detail,
                              prefix);
            ++grouped;
            i = j;
        }
        if (grouped != table.size())
            return failed("inner", "inner table has extra prefixes");
    }

    // same-profile prefixes at distance <= 2 must have disjoint inners
    std::mt19937_64 rng(opts.seed);
    const bool disjointness_exhaustive = plen * std::log2(static_cast<double>(q)) <= 22.0 + 1e-9;
    for (std::size_t ci = 0; ci < D.components.size(); ++ci) {
        const auto& table = D.inner[ci];
        auto check_prefix = [&](const Word& prefix, const Code& mine) -> bool {
            bool ok = true;
            Word scratch;
            for_each_profile_preserving_neighbor(F, L, prefix, scratch, [&](const Word& other) {
                if (!ok) return;
                const auto it = table.find(other);
                if (it == table.end()) return;
                for (std::size_t a = 0; a < mine.size() && ok; ++a)
                    if (it->second.contains(mine.row(a))) ok = false;
            });
            return ok;
        };
        if (disjointness_exhaustive) {
            for (const auto& [prefix, inner_code] : table)
                if (!check_prefix(prefix, inner_code))
                    return failed("inner_disjoint", "inner codes of two close prefixes intersect", prefix);
        } else {
            std::vector<const Word*> keys;
            keys.reserve(table.size());
            for (const auto& kv : table) keys.push_back(&kv.first);
            for (std::uint64_t it = 0; it < opts.min_sampled_pairs; ++it) {
                const Word& prefix = *keys[rng() % keys.size()];
                if (!check_prefix(prefix, table.at(prefix)))
                    return failed("inner_disjoint", "inner codes of two close prefixes intersect", prefix);
            }
        }
    }

    res.ok = true;
    return res;
}

} // namespace muq
