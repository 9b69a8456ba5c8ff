#include "muq/hamming.hpp"

#include <algorithm>
#include <cmath>

namespace muq {

std::vector<Word> projective_points(int q, int r) {
    require(q >= 2 && r >= 1, Err::BadLength, "projective_points needs q >= 2, r >= 1");
    const std::int64_t t = length_for(q, r);
    require(t <= 100000, Err::TooLarge, "too many projective points");
    std::vector<Word> pts;
    pts.reserve(t);
    // lexicographic enumeration of all of GF(q)^r visits normalized
    // representatives in their final order
    Word v(r, 0);
    for (std::uint64_t it = 1, total = ipow(q, r); it < total; ++it) {
        int i = r - 1;
        while (++v[i] == q) v[i--] = 0;
        int lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] == 1) pts.push_back(v);
    }
    require(static_cast<std::int64_t>(pts.size()) == t, Err::StructureViolation,
            "projective point count mismatch");
    return pts;
}

ParityCheckMatrix parity_check_matrix(int q, int r) {
    ParityCheckMatrix H;
    H.q = q;
    H.r = r;
    H.columns = projective_points(q, r);
    H.t = static_cast<int>(H.columns.size());
    return H;
}

Word syndrome(const ParityCheckMatrix& H, const FieldTable& F, std::span<const Sym> x) {
    require(static_cast<int>(x.size()) == H.t, Err::LengthMismatch, "syndrome length mismatch");
    Word s(H.r, 0);
    for (int i = 0; i < H.t; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < H.r; ++j) s[j] = F.add(s[j], F.mul(x[i], H.columns[i][j]));
    }
    return s;
}

std::size_t syndrome_index(const ParityCheckMatrix& H, const FieldTable& F,
                           std::span<const Sym> x) {
    return static_cast<std::size_t>(pack_word(syndrome(H, F, x), H.q));
}

Code hamming_code(const FieldTable& F, int r) {
    const int q = F.q;
    const auto H = parity_check_matrix(q, r);
    const int t = H.t;
    const int dim = t - r;
    require(dim >= 0, Err::BadLength, "r too large");
    require(dim * std::log2(static_cast<double>(q)) <= 22.0 + 1e-9, Err::TooLarge,
            "hamming code larger than 2^22 words");

    // Gaussian elimination on the r x t matrix, then a kernel basis from
    // the free columns.
    std::vector<Word> m(r, Word(t, 0));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < r; ++j) m[j][i] = H.columns[i][j];
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < t && row < r; ++col) {
        int sel = -1;
        for (int i = row; i < r; ++i)
            if (m[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[sel], m[row]);
        const Sym inv = F.inv(m[row][col]);
        for (int j = 0; j < t; ++j) m[row][j] = F.mul(m[row][j], inv);
        for (int i = 0; i < r; ++i) {
            if (i == row || m[i][col] == 0) continue;
            const Sym c = m[i][col];
            for (int j = 0; j < t; ++j) m[i][j] = F.sub(m[i][j], F.mul(c, m[row][j]));
        }
        pivot_col.push_back(col);
        ++row;
    }
    require(row == r, Err::StructureViolation, "parity-check matrix not full rank");

    std::vector<bool> is_pivot(t, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<Word> basis;
    basis.reserve(dim);
    for (int fc = 0; fc < t; ++fc) {
        if (is_pivot[fc]) continue;
        Word b(t, 0);
        b[fc] = 1;
        for (int k = 0; k < r; ++k) b[pivot_col[k]] = F.neg(m[k][fc]);
        basis.push_back(std::move(b));
    }
    const Code basis_code = Code::from_words(q, t, basis);
    if (dim == 0) return Code::from_rows(q, t, std::vector<Sym>(t, 0));
    return span(F, basis_code);
}

int PerfectPartition::gamma(std::span<const Sym> y) const {
    require(static_cast<int>(y.size()) == n0, Err::LengthMismatch, "gamma length mismatch");
    const std::size_t idx = static_cast<std::size_t>(pack_word(y, q));
    const std::int32_t g = gamma_table[idx];
    require(g >= 0, Err::BadPartition, "word not covered by any part");
    return g;
}

void PerfectPartition::rebuild_gamma() {
    const std::size_t space = ipow(q, n0);
    gamma_table.assign(space, -1);
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const Code& c = parts[p];
        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::size_t idx = static_cast<std::size_t>(pack_word(c.row(i), q));
            require(gamma_table[idx] < 0, Err::BadPartition, "parts overlap");
            gamma_table[idx] = static_cast<std::int32_t>(p);
        }
    }
}

PerfectPartition perfect_partition(const FieldTable& F, int n0) {
    const int q = F.q;
    PerfectPartition part;
    part.q = q;
    part.n0 = n0;
    if (n0 == 1) {
        for (int v = 0; v < q; ++v)
            part.parts.push_back(Code::from_rows(q, 1, {static_cast<Sym>(v)}));
        part.rebuild_gamma();
        return part;
    }
    const auto s = m_for_length(q, n0);
    require(s.has_value(), Err::BadLength,
            "n0=" + std::to_string(n0) + " is not (q^s-1)/(q-1) for any s");
    const Code ham = hamming_code(F, *s);
    const auto H = parity_check_matrix(q, *s);
    const std::size_t nparts = ipow(q, *s);
    require(static_cast<std::size_t>((q - 1) * n0 + 1) == nparts, Err::StructureViolation,
            "part count mismatch");

    // coset representative per syndrome: e_i scaled over the projective
    // column i recovers every syndrome exactly once
    std::vector<Word> reps(nparts);
    reps[0] = Word(n0, 0);
    for (int i = 0; i < n0; ++i) {
        for (int a = 1; a < q; ++a) {
            Word e(n0, 0);
            e[i] = static_cast<Sym>(a);
            reps[syndrome_index(H, F, e)] = std::move(e);
        }
    }
    for (std::size_t sidx = 0; sidx < nparts; ++sidx) {
        const Word& rep = reps[sidx];
        std::vector<Sym> rows;
        rows.reserve(ham.size() * n0);
        for (std::size_t i = 0; i < ham.size(); ++i) {
            const auto w = ham.row(i);
            for (int j = 0; j < n0; ++j) rows.push_back(F.add(w[j], rep[j]));
        }
        part.parts.push_back(Code::from_rows(q, n0, std::move(rows)));
    }
    part.rebuild_gamma();
    return part;
}

PartitionCheck partition_verify(const PerfectPartition& p) {
    PartitionCheck res;
    const std::size_t space = ipow(p.q, p.n0);
    if (p.parts.size() != static_cast<std::size_t>((p.q - 1) * p.n0 + 1)) {
        res.detail = "expected " + std::to_string((p.q - 1) * p.n0 + 1) + " parts, have " +
                     std::to_string(p.parts.size());
        return res;
    }
    std::size_t covered = 0;
    std::vector<bool> seen(space, false);
    for (std::size_t k = 0; k < p.parts.size(); ++k) {
        const Code& c = p.parts[k];
        if (c.q != p.q || c.n != p.n0) {
            res.detail = "part " + std::to_string(k) + " has wrong shape";
            return res;
        }
        const auto pc = is_perfect(c);
        if (!pc.ok) {
            res.detail = "part " + std::to_string(k) + " is not perfect: " + pc.detail;
            return res;
        }
        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::size_t idx = static_cast<std::size_t>(pack_word(c.row(i), p.q));
            if (seen[idx]) {
                res.detail = "parts overlap at " + format_word(c.row(i));
                return res;
            }
            seen[idx] = true;
            ++covered;
        }
    }
    if (covered != space) {
        res.detail = "parts cover " + std::to_string(covered) + " of " + std::to_string(space) +
                     " words";
        return res;
    }
    res.ok = true;
    return res;
}

} // namespace muq
