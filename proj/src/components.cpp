#include "muq/components.hpp"

#include <cmath>

namespace muq {

namespace {

struct BuilderCommon {
    ComponentScheme sch;
    const FieldTable& F;
    const Word& mu;
    const MultaryQuasigroup& v;
    const MultaryQuasigroup& h;
    std::span<const MultaryQuasigroup> V;

    void validate() const {
        const int q = F.q, k = sch.k, t = sch.t;
        require(q >= 2 && k >= 1 && t >= 1, Err::ArityMismatch, "need q >= 2, k >= 1, t >= 1");
        require(static_cast<int>(mu.size()) == t, Err::ArityMismatch, "mu must have length t");
        for (Sym x : mu) require(x < q, Err::IndexOutOfRange, "mu symbol out of range");
        require(v.arity == q - 1 && v.order == q, Err::ArityMismatch, "v must be (q-1)-ary of order q");
        require(h.arity == q - 1 && h.order == q, Err::ArityMismatch, "h must be (q-1)-ary of order q");
        require(static_cast<int>(V.size()) == t, Err::ArityMismatch, "need t vertical quasigroups");
        for (const auto& Vi : V)
            require(Vi.arity == k + 1 && Vi.order == q, Err::ArityMismatch,
                    "V_i must be (k+1)-ary of order q");
        require(vh_pair_check(v, h, F), Err::BadVHPair,
                "(y | v(y) | h(y)) does not form a perfect code");
    }

    // v- and h-folds of every sub-block of the word w
    void folds(std::span<const Sym> w, std::vector<Sym>& vf, std::vector<Sym>& hf) const {
        const int q = F.q, k = sch.k, t = sch.t;
        for (int i = 0; i < t; ++i) {
            for (int j = 0; j < k; ++j) {
                const auto sub = w.subspan(sch.sub_block(i, j), q - 1);
                vf[i * k + j] = v.eval(sub);
                hf[i * k + j] = h.eval(sub);
            }
        }
    }

    bool v_condition(std::span<const Sym> w, const std::vector<Sym>& vf) const {
        const int k = sch.k, t = sch.t;
        Word args(k + 1, 0);
        for (int i = 0; i < t; ++i) {
            for (int j = 0; j < k; ++j) args[j] = vf[i * k + j];
            args[k] = w[sch.y_pos(i)];
            if (V[i].eval(args) != mu[i]) return false;
        }
        return true;
    }

    MuComponent finish(std::vector<Sym> rows) const {
        MuComponent K;
        K.layout = CodeParameters::from_blocks(F.q, sch.t, sch.l(), sch.k);
        K.mu = mu;
        K.sigma.t = sch.t;
        K.sigma.l = sch.l();
        K.sigma.order = F.q;
        for (int i = 0; i < sch.t; ++i)
            K.sigma.sigmas.push_back(sigma_from_component_law(V[i], v, sch.k));
        K.code = Code::from_rows(F.q, sch.n(), std::move(rows));
        return K;
    }

    bool use_filter(BuildRoute route) const {
        if (route == BuildRoute::filter) return true;
        if (route == BuildRoute::solve) return false;
        return sch.n() * std::log2(static_cast<double>(F.q)) <= 24.0 + 1e-9;
    }

    // Iterate the whole space F_q^n, keeping words that satisfy the
    // V-condition and the construction-specific tail condition.
    template <typename TailCond>
    std::vector<Sym> filter_route(const TailCond& tail_ok) const {
        const int q = F.q, k = sch.k, t = sch.t, n = sch.n();
        std::vector<Sym> rows;
        Word w(n, 0);
        std::vector<Sym> vf(t * k), hf(t * k);
        for (std::uint64_t it = 0, total = ipow(q, n);; ++it) {
            folds(w, vf, hf);
            if (v_condition(w, vf) && tail_ok(w, hf)) rows.insert(rows.end(), w.begin(), w.end());
            if (it + 1 == total) break;
            int i = n - 1;
            while (++w[i] == q) w[i--] = 0;
        }
        return rows;
    }

    // Enumerate the free x_ij sub-blocks, derive each y_i by quasigroup
    // inversion, and let the construction-specific callback emit the
    // admissible tails.
    template <typename EmitTails>
    std::vector<Sym> solve_route(const EmitTails& emit) const {
        const int q = F.q, k = sch.k, t = sch.t, n = sch.n();
        const int free_syms = (q - 1) * k * t;
        std::vector<Sym> rows;
        Word w(n, 0);
        std::vector<Sym> vf(t * k), hf(t * k);
        Word args(k + 1, 0);
        for (std::uint64_t it = 0, total = ipow(q, free_syms);; ++it) {
            folds(w, vf, hf);
            for (int i = 0; i < t; ++i) {
                for (int j = 0; j < k; ++j) args[j] = vf[i * k + j];
                w[sch.y_pos(i)] = V[i].solve_last(std::span<const Sym>(args).first(k), mu[i]);
            }
            emit(w, hf, rows);
            if (it + 1 == total) break;
            // advance the x_ij coordinates only (skip each y_i and the tail)
            int i = t - 1, j = k - 1, pos = sch.sub_block(i, j) + (q - 2);
            while (true) {
                if (++w[pos] < q) break;
                w[pos] = 0;
                if (pos > sch.sub_block(i, j)) {
                    --pos;
                } else if (j > 0) {
                    --j;
                    pos = sch.sub_block(i, j) + (q - 2);
                } else if (i > 0) {
                    --i;
                    j = k - 1;
                    pos = sch.sub_block(i, j) + (q - 2);
                } else {
                    break;
                }
            }
        }
        return rows;
    }
};

} // namespace

MuComponent build_mollard_phelps(const FieldTable& F, const Word& mu, const Code& csharp,
                                 const MultaryQuasigroup& v, const MultaryQuasigroup& h,
                                 std::span<const MultaryQuasigroup> V,
                                 std::span<const MultaryQuasigroup> H, BuildRoute route) {
    const int q = F.q;
    const int k = csharp.n;
    const int t = static_cast<int>(mu.size());
    BuilderCommon B{{q, k, t}, F, mu, v, h, V};
    B.validate();
    require(csharp.q == q, Err::ArityMismatch, "csharp alphabet mismatch");
    require(static_cast<int>(H.size()) == k, Err::ArityMismatch, "need k horizontal quasigroups");
    for (const auto& Hj : H)
        require(Hj.arity == t + 1 && Hj.order == q, Err::ArityMismatch,
                "H_j must be (t+1)-ary of order q");
    {
        const auto pc = is_perfect(csharp);
        require(pc.ok, Err::NotPerfect, "csharp is not perfect: " + pc.detail);
    }

    std::vector<Sym> rows;
    if (B.use_filter(route)) {
        Word cond(k, 0);
        Word args(t + 1, 0);
        rows = B.filter_route([&](const Word& w, const std::vector<Sym>& hf) {
            for (int j = 0; j < k; ++j) {
                for (int i = 0; i < t; ++i) args[i] = hf[i * k + j];
                args[t] = w[B.sch.z_pos(j)];
                cond[j] = H[j].eval(args);
            }
            return csharp.contains(cond);
        });
    } else {
        Word args(t + 1, 0);
        rows = B.solve_route([&](Word& w, const std::vector<Sym>& hf, std::vector<Sym>& out) {
            for (std::size_t ci = 0; ci < csharp.size(); ++ci) {
                const auto c = csharp.row(ci);
                for (int j = 0; j < k; ++j) {
                    for (int i = 0; i < t; ++i) args[i] = hf[i * k + j];
                    w[B.sch.z_pos(j)] = H[j].solve_last(std::span<const Sym>(args).first(t), c[j]);
                }
                out.insert(out.end(), w.begin(), w.end());
            }
        });
    }
    return B.finish(std::move(rows));
}

MuComponent build_phelps(const FieldTable& F, const Word& mu,
                         std::span<const PerfectPartition> partitions, const MultaryQuasigroup& v,
                         const MultaryQuasigroup& h, std::span<const MultaryQuasigroup> V,
                         const MultaryQuasigroup& Q, BuildRoute route) {
    const int q = F.q;
    const int t = static_cast<int>(mu.size());
    require(partitions.size() == static_cast<std::size_t>(t) + 1, Err::BadPartition,
            "need t+1 perfect partitions");
    const int k = partitions[0].n0;
    BuilderCommon B{{q, k, t}, F, mu, v, h, V};
    B.validate();
    const int order = (q - 1) * k + 1;
    for (const auto& p : partitions) {
        require(p.q == q && p.n0 == k, Err::BadPartition, "partition shape mismatch");
        const auto chk = partition_verify(p);
        require(chk.ok, Err::BadPartition, chk.detail);
    }
    require(Q.arity == t && Q.order == order, Err::BadOrder,
            "Q must be t-ary of order qk-k+1 = " + std::to_string(order));

    std::vector<Sym> rows;
    Word hrow(k, 0);
    Word g(t, 0);
    if (B.use_filter(route)) {
        rows = B.filter_route([&](const Word& w, const std::vector<Sym>& hf) {
            for (int i = 0; i < t; ++i) {
                for (int j = 0; j < k; ++j) hrow[j] = hf[i * k + j];
                g[i] = static_cast<Sym>(partitions[i].gamma(hrow));
            }
            const auto z = std::span<const Sym>(w).subspan(B.sch.z_pos(0), k);
            return Q.eval(g) == partitions[t].gamma(z);
        });
    } else {
        rows = B.solve_route([&](Word& w, const std::vector<Sym>& hf, std::vector<Sym>& out) {
            for (int i = 0; i < t; ++i) {
                for (int j = 0; j < k; ++j) hrow[j] = hf[i * k + j];
                g[i] = static_cast<Sym>(partitions[i].gamma(hrow));
            }
            const Code& part = partitions[t].parts[Q.eval(g)];
            for (std::size_t zi = 0; zi < part.size(); ++zi) {
                const auto z = part.row(zi);
                for (int j = 0; j < k; ++j) w[B.sch.z_pos(j)] = z[j];
                out.insert(out.end(), w.begin(), w.end());
            }
        });
    }
    return B.finish(std::move(rows));
}

ComponentCheck component_verify(const MuComponent& K) {
    ComponentCheck res;
    const auto& L = K.layout;
    // (i) the generalized parity-check law
    for (std::size_t i = 0; i < K.code.size(); ++i) {
        const auto w = K.code.row(i);
        if (sigma_profile(w, L, K.sigma) != K.mu) {
            res.kind = ComponentCheck::Fail::law;
            res.witness = Word(w.begin(), w.end());
            res.detail = "word " + format_word(w) + " has profile " +
                         format_word(sigma_profile(w, L, K.sigma)) + " != mu=" + format_word(K.mu);
            return res;
        }
    }
    // (ii) code distance
    if (K.code.size() >= 2) {
        if (const auto pair = find_pair_below(K.code, 3)) {
            res.kind = ComponentCheck::Fail::distance;
            res.witness = K.code.word_at(pair->i);
            res.detail = "words " + format_word(K.code.row(pair->i)) + " and " +
                         format_word(K.code.row(pair->j)) + " are at distance " +
                         std::to_string(pair->dist);
            return res;
        }
    }
    // (iii) cardinality, only when the layout admits combining
    if (L.combinable()) {
        const std::uint64_t want = ipow(L.q, L.n - L.m - (L.t - L.r));
        if (K.code.size() != want) {
            res.kind = ComponentCheck::Fail::cardinality;
            res.detail = "component has " + std::to_string(K.code.size()) + " words, expected q^" +
                         std::to_string(L.n - L.m - (L.t - L.r)) + " = " + std::to_string(want);
            return res;
        }
    }
    res.ok = true;
    return res;
}

MuComponent component_shift(const FieldTable& F, const MuComponent& K, const Word& target_mu) {
    const auto& L = K.layout;
    require(static_cast<int>(target_mu.size()) == L.t, Err::ArityMismatch,
            "target mu must have length t");
    Word z(L.n, 0);
    for (int i = 0; i < L.t; ++i) {
        const auto lin = linear_form(F, K.sigma.sigmas[i]);
        require(lin.has_value() && lin->second == 0, Err::NonlinearSigma,
                "sigma_" + std::to_string(i + 1) + " is not linear with zero constant");
        const Sym diff = F.sub(target_mu[i], K.mu[i]);
        z[static_cast<std::size_t>(i) * L.l] = F.mul(F.inv(lin->first[0]), diff);
    }
    std::vector<Sym> rows;
    rows.reserve(K.code.flat.size());
    for (std::size_t i = 0; i < K.code.size(); ++i) {
        const auto w = K.code.row(i);
        for (int j = 0; j < L.n; ++j) rows.push_back(F.add(w[j], z[j]));
    }
    MuComponent out;
    out.code = Code::from_rows(L.q, L.n, std::move(rows));
    out.mu = target_mu;
    out.layout = L;
    out.sigma = K.sigma;
    return out;
}

} // namespace muq
