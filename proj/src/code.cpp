#include "muq/code.hpp"

#include "muq/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

namespace muq {

std::int64_t length_for(int q, int m) {
    require(q >= 2 && m >= 1, Err::BadLength, "length_for needs q >= 2, m >= 1");
    std::int64_t n = 0, pw = 1;
    for (int i = 0; i < m; ++i) {
        n += pw;
        pw *= q;
        require(n <= (std::int64_t{1} << 40), Err::TooLarge, "length overflow");
    }
    return n;
}

std::optional<int> m_for_length(int q, std::int64_t n) {
    std::int64_t acc = 0, pw = 1;
    for (int m = 1; m <= 64; ++m) {
        acc += pw;
        pw *= q;
        if (acc == n) return m;
        if (acc > n) return std::nullopt;
    }
    return std::nullopt;
}

CodeParameters CodeParameters::from_mr(int q, int m, int r) {
    require(q >= 2, Err::LayoutMismatch, "q must be >= 2");
    require(r >= 1 && r < m, Err::LayoutMismatch,
            "need 1 <= r < m, got r=" + std::to_string(r) + " m=" + std::to_string(m));
    CodeParameters p;
    p.q = q;
    p.m = m;
    p.r = r;
    p.s = m - r;
    p.n = static_cast<int>(length_for(q, m));
    p.t = static_cast<int>(length_for(q, r));
    p.l = static_cast<int>(ipow(q, p.s));
    p.n0 = static_cast<int>(length_for(q, p.s));
    require(p.n == p.l * p.t + p.n0, Err::LayoutMismatch, "block layout identity failed");
    return p;
}

CodeParameters CodeParameters::from_blocks(int q, int t, int l, int n0) {
    require(q >= 2 && t >= 1 && l >= 1 && n0 >= 0, Err::LayoutMismatch, "bad block layout");
    CodeParameters p;
    p.q = q;
    p.t = t;
    p.l = l;
    p.n0 = n0;
    p.n = l * t + n0;
    // combinable iff l = q^s (s >= 1), n0 = (q^s-1)/(q-1), t = (q^r-1)/(q-1)
    int s = 0;
    std::int64_t pw = 1;
    while (pw < l) {
        pw *= q;
        ++s;
    }
    if (pw == l && s >= 1 && length_for(q, s) == n0) {
        if (auto r = m_for_length(q, t)) {
            p.r = *r;
            p.s = s;
            p.m = *r + s;
        }
    }
    return p;
}

bool Code::contains(std::span<const Sym> w) const {
    if (static_cast<int>(w.size()) != n || size() == 0) return false;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const int cmp = std::memcmp(flat.data() + mid * n, w.data(), n);
        if (cmp < 0) lo = mid + 1;
        else if (cmp > 0) hi = mid;
        else return true;
    }
    return false;
}

namespace {

void sort_dedup_rows(int n, std::vector<Sym>& rows) {
    if (n == 0) return;
    const std::size_t count = rows.size() / n;
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    const Sym* base = rows.data();
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::memcmp(base + a * n, base + b * n, n) < 0;
    });
    std::vector<Sym> out;
    out.reserve(rows.size());
    for (std::size_t k = 0; k < count; ++k) {
        const Sym* r = base + idx[k] * n;
        if (!out.empty() && std::memcmp(out.data() + out.size() - n, r, n) == 0) continue;
        out.insert(out.end(), r, r + n);
    }
    rows = std::move(out);
}

} // namespace

Code Code::from_words(int q, int n, const std::vector<Word>& words) {
    std::vector<Sym> rows;
    rows.reserve(words.size() * n);
    for (const Word& w : words) {
        require(static_cast<int>(w.size()) == n, Err::LengthMismatch,
                "word length " + std::to_string(w.size()) + " != n=" + std::to_string(n));
        rows.insert(rows.end(), w.begin(), w.end());
    }
    return from_rows(q, n, std::move(rows));
}

Code Code::from_rows(int q, int n, std::vector<Sym> rows) {
    require(q >= 2 && q <= 16, Err::BadLength, "alphabet size out of range");
    require(n >= 1 && rows.size() % n == 0, Err::LengthMismatch,
            "row buffer not a multiple of n");
    for (Sym x : rows)
        require(x < q, Err::IndexOutOfRange, "symbol out of range for q=" + std::to_string(q));
    sort_dedup_rows(n, rows);
    Code c;
    c.q = q;
    c.n = n;
    c.flat = std::move(rows);
    return c;
}

unsigned hamming_distance(std::span<const Sym> x, std::span<const Sym> y) {
    return kernels::distance(x, y);
}

unsigned min_distance(const Code& c) {
    require(c.size() >= 2, Err::TooSmall, "min_distance needs at least 2 words");
    const auto& k = kernels::active();
    unsigned best = static_cast<unsigned>(c.n) + 1;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const unsigned d = k.min_against(c.row(i).data(), c.flat.data() + (i + 1) * c.n,
                                         c.size() - i - 1, c.n, 1, nullptr);
        best = std::min(best, d);
        if (best <= 1) break; // distinct rows cannot get closer
    }
    return best;
}

std::optional<DistanceWitness> find_pair_below(const Code& c, unsigned d) {
    if (c.size() < 2 || d == 0) return std::nullopt;
    const auto& k = kernels::active();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        std::size_t hit = 0;
        const unsigned dist = k.min_against(c.row(i).data(), c.flat.data() + (i + 1) * c.n,
                                            c.size() - i - 1, c.n, d - 1, &hit);
        if (dist <= d - 1) return DistanceWitness{i, i + 1 + hit, dist};
    }
    return std::nullopt;
}

unsigned cross_distance_min(const Code& a, const Code& b, unsigned stop) {
    require(a.n == b.n, Err::LengthMismatch, "cross_distance_min length mismatch");
    const auto& k = kernels::active();
    unsigned best = static_cast<unsigned>(a.n) + 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const unsigned d = k.min_against(a.row(i).data(), b.flat.data(), b.size(), a.n, stop, nullptr);
        best = std::min(best, d);
        if (best <= stop) break;
    }
    return best;
}

std::uint64_t pack_word(std::span<const Sym> w, int q) {
    std::uint64_t v = 0;
    for (Sym x : w) v = v * q + x;
    return v;
}

Word unpack_word(std::uint64_t v, int q, int n) {
    Word w(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        w[i] = static_cast<Sym>(v % q);
        v /= q;
    }
    return w;
}

PerfectCheck is_perfect(const Code& c) {
    PerfectCheck res;
    require(c.n >= 1, Err::BadLength, "is_perfect needs n >= 1");
    const int q = c.q, n = c.n;
    double space_bits = n * std::log2(static_cast<double>(q));
    require(space_bits <= 26.0 + 1e-9, Err::TooLarge,
            "q^n exceeds the 2^26 covering-check cap");
    const std::uint64_t space = ipow(q, n);
    // |C| * (1 + n(q-1)) != q^n guarantees failure, but the ball insertion
    // below still runs so the certificate (a collision or an uncovered
    // word) can be produced either way.

    std::vector<std::uint64_t> bits((space + 63) / 64, 0);
    std::vector<std::uint64_t> place(n);
    {
        std::uint64_t pw = 1;
        for (int i = n - 1; i >= 0; --i) {
            place[i] = pw;
            pw *= q;
        }
    }
    auto test_set = [&bits](std::uint64_t v) {
        const std::uint64_t mask = 1ull << (v & 63);
        const bool was = bits[v >> 6] & mask;
        bits[v >> 6] |= mask;
        return was;
    };

    std::uint64_t inserted = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto w = c.row(i);
        const std::uint64_t base = pack_word(w, q);
        if (test_set(base)) {
            res.kind = PerfectCheck::Fail::doubly_covered;
            res.witness = unpack_word(base, q, n);
            res.detail = "word " + format_word(res.witness) + " covered by two codeword balls";
            return res;
        }
        ++inserted;
        for (int pos = 0; pos < n; ++pos) {
            const std::uint64_t off = w[pos] * place[pos];
            for (int b = 0; b < q; ++b) {
                if (b == w[pos]) continue;
                const std::uint64_t v = base - off + static_cast<std::uint64_t>(b) * place[pos];
                if (test_set(v)) {
                    res.kind = PerfectCheck::Fail::doubly_covered;
                    res.witness = unpack_word(v, q, n);
                    res.detail = "word " + format_word(res.witness) + " covered by two codeword balls";
                    return res;
                }
                ++inserted;
            }
        }
    }
    if (inserted < space) {
        for (std::uint64_t blk = 0; blk < bits.size(); ++blk) {
            if (~bits[blk] == 0) continue;
            const std::uint64_t v = blk * 64 + static_cast<std::uint64_t>(std::countr_one(bits[blk]));
            if (v >= space) break;
            res.kind = PerfectCheck::Fail::uncovered;
            res.witness = unpack_word(v, q, n);
            res.detail = "word " + format_word(res.witness) + " not covered by any codeword ball";
            return res;
        }
    }
    res.ok = true;
    return res;
}

Word EchelonBasis::reduce(Word w) const {
    require(static_cast<int>(w.size()) == n_, Err::LengthMismatch, "basis length mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Sym c = w[pivots_[k]];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j) w[j] = F_->sub(w[j], F_->mul(c, rows_[k][j]));
    }
    return w;
}

bool EchelonBasis::insert(Word w) {
    w = reduce(std::move(w));
    int piv = -1;
    for (int j = 0; j < n_; ++j)
        if (w[j] != 0) {
            piv = j;
            break;
        }
    if (piv < 0) return false;
    const Sym inv = F_->inv(w[piv]);
    for (auto& x : w) x = F_->mul(x, inv);
    // back-substitute into existing rows
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Sym c = rows_[k][piv];
        if (c == 0) continue;
        for (int j = 0; j < n_; ++j) rows_[k][j] = F_->sub(rows_[k][j], F_->mul(c, w[j]));
    }
    const auto it = std::upper_bound(pivots_.begin(), pivots_.end(), piv);
    const std::size_t at = it - pivots_.begin();
    pivots_.insert(it, piv);
    rows_.insert(rows_.begin() + at, std::move(w));
    return true;
}

int rank(const FieldTable& F, const Code& c) {
    require(c.size() >= 1, Err::Empty, "rank of empty code");
    EchelonBasis e(F, c.n);
    for (std::size_t i = 0; i < c.size(); ++i) {
        e.insert(c.word_at(i));
        if (e.dim() == c.n) break;
    }
    return e.dim();
}

std::vector<Word> span_basis(const FieldTable& F, const Code& c) {
    require(c.size() >= 1, Err::Empty, "span of empty code");
    EchelonBasis e(F, c.n);
    for (std::size_t i = 0; i < c.size(); ++i) e.insert(c.word_at(i));
    return e.rows();
}

Code span(const FieldTable& F, const Code& c) {
    const auto basis = span_basis(F, c);
    const int k = static_cast<int>(basis.size());
    require(k * std::log2(static_cast<double>(c.q)) <= 22.0 + 1e-9, Err::TooLarge,
            "span larger than 2^22 words");
    const std::uint64_t total = ipow(c.q, k);
    std::vector<Sym> rows;
    rows.reserve(total * c.n);
    Word cur(c.n, 0);
    std::vector<Sym> digits(k, 0);
    rows.insert(rows.end(), cur.begin(), cur.end());
    for (std::uint64_t step = 1; step < total; ++step) {
        // mixed-radix increment over coefficient indices; each tick of
        // digit i adds (new - old) * basis[i], so a full wrap sums to zero
        int i = k - 1;
        while (true) {
            const Sym old = digits[i];
            const Sym next = static_cast<Sym>(old + 1 == c.q ? 0 : old + 1);
            const Sym delta = F.sub(next, old);
            for (int j = 0; j < c.n; ++j) cur[j] = F.add(cur[j], F.mul(delta, basis[i][j]));
            digits[i] = next;
            if (next != 0) break;
            --i;
        }
        rows.insert(rows.end(), cur.begin(), cur.end());
    }
    return Code::from_rows(c.q, c.n, std::move(rows));
}

MonomialTransform MonomialTransform::identity(int n) {
    MonomialTransform t;
    t.perm.resize(n);
    t.scale.assign(n, 1);
    for (int i = 0; i < n; ++i) t.perm[i] = i;
    return t;
}

MonomialTransform MonomialTransform::inverse(const FieldTable& F) const {
    MonomialTransform inv;
    const int n = static_cast<int>(perm.size());
    inv.perm.resize(n);
    inv.scale.assign(n, 1);
    for (int i = 0; i < n; ++i) inv.perm[perm[i]] = i;
    // forward: y[perm[i]] = scale[perm[i]] * x[i]; the inverse scales old
    // position i by scale[perm[i]]^-1, placed at its new position i.
    for (int i = 0; i < n; ++i) inv.scale[i] = F.inv(scale[perm[i]]);
    return inv;
}

Word apply_monomial(const MonomialTransform& psi, const FieldTable& F, std::span<const Sym> x) {
    require(psi.perm.size() == x.size() && psi.scale.size() == x.size(), Err::LengthMismatch,
            "monomial transform length mismatch");
    Word y(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int j = psi.perm[i];
        require(psi.scale[j] != 0, Err::ZeroCoefficient, "zero scale in monomial transform");
        y[j] = F.mul(psi.scale[j], x[i]);
    }
    return y;
}

Code apply_monomial(const MonomialTransform& psi, const FieldTable& F, const Code& c) {
    std::vector<Sym> rows;
    rows.reserve(c.flat.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Word y = apply_monomial(psi, F, c.row(i));
        rows.insert(rows.end(), y.begin(), y.end());
    }
    return Code::from_rows(c.q, c.n, std::move(rows));
}

} // namespace muq
