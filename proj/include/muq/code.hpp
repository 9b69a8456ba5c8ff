#ifndef MUQ_CODE_HPP
#define MUQ_CODE_HPP

#include "muq/gf.hpp"
#include "muq/types.hpp"

#include <optional>

namespace muq {

// Admissible length (q^m - 1)/(q - 1); throws TooLarge past 2^40.
std::int64_t length_for(int q, int m);
// m with n = (q^m - 1)/(q - 1), if any.
std::optional<int> m_for_length(int q, std::int64_t n);

// Block layout of a word: t blocks of length l followed by a tail of
// length n0, n = l*t + n0. When the layout comes from parameters (q, m, r)
// of the combining construction, m, r, s are set and
// t = (q^r-1)/(q-1), l = q^s, n0 = (q^s-1)/(q-1) with s = m - r.
// Standalone component layouts (arbitrary t) leave m = r = s = -1.
struct CodeParameters {
    int q = 0;
    int n = 0;
    int m = -1;
    int r = -1;
    int t = 0;
    int s = -1;
    int l = 0;
    int n0 = 0;

    bool combinable() const { return r >= 0; }

    static CodeParameters from_mr(int q, int m, int r);
    // Infers (m, r, s) from the block structure when they exist.
    static CodeParameters from_blocks(int q, int t, int l, int n0);

    bool operator==(const CodeParameters&) const = default;
};

// A set of equal-length words over GF(q), stored row-major, rows in
// canonical (lexicographic) order, deduplicated. Immutable by convention.
struct Code {
    int q = 0;
    int n = 0;
    std::vector<Sym> flat;

    std::size_t size() const { return n == 0 ? 0 : flat.size() / n; }
    std::span<const Sym> row(std::size_t i) const {
        return {flat.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
    }
    Word word_at(std::size_t i) const {
        auto r = row(i);
        return Word(r.begin(), r.end());
    }
    bool contains(std::span<const Sym> w) const;

    static Code from_words(int q, int n, const std::vector<Word>& words);
    static Code from_rows(int q, int n, std::vector<Sym> rows); // sorts + dedups

    auto operator<=>(const Code&) const = default;
};

unsigned hamming_distance(std::span<const Sym> x, std::span<const Sym> y);
inline unsigned hamming_distance(const Word& x, const Word& y) {
    return hamming_distance(std::span<const Sym>(x), std::span<const Sym>(y));
}

// Exact minimum over all unordered pairs; TooSmall if |C| < 2.
unsigned min_distance(const Code& c);

// First pair at distance <= d-1, if any. Returns {row_i, row_j} indices.
struct DistanceWitness {
    std::size_t i = 0, j = 0;
    unsigned dist = 0;
};
std::optional<DistanceWitness> find_pair_below(const Code& c, unsigned d);

// Minimum distance between two word sets (cross pairs only), with early
// exit once a pair at distance <= stop is seen.
unsigned cross_distance_min(const Code& a, const Code& b, unsigned stop);

struct PerfectCheck {
    bool ok = false;
    enum class Fail { none, doubly_covered, uncovered } kind = Fail::none;
    Word witness;       // offending word of F_q^n when !ok
    std::string detail; // human-readable reason
};

// Radius-1 covering check over the full space; q^n is capped at 2^26
// (TooLarge above). Cardinality |C|*(1+n(q-1)) = q^n is tested first, the
// ball insertion then yields a doubly-covered or uncovered certificate.
PerfectCheck is_perfect(const Code& c);

// Number of pivots of the |C| x n codeword matrix over GF(q).
int rank(const FieldTable& F, const Code& c);

// Reduced-echelon basis maintained incrementally: rows normalized to a
// leading 1, fully reduced, kept in pivot order.
class EchelonBasis {
  public:
    EchelonBasis(const FieldTable& F, int n) : F_(&F), n_(n) {}

    // Reduces w against the basis; inserts and returns true if independent.
    bool insert(Word w);
    // Residue of w after reduction (zero word iff w is in the span).
    Word reduce(Word w) const;

    const std::vector<Word>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    int n() const { return n_; }

  private:
    const FieldTable* F_;
    int n_;
    std::vector<Word> rows_;
    std::vector<int> pivots_;
};

// Reduced-echelon basis of the linear span (rows normalized, pivots 1,
// fully reduced), in pivot order.
std::vector<Word> span_basis(const FieldTable& F, const Code& c);

// Full linear span as a Code; requires q^rank <= 2^22 (TooLarge).
Code span(const FieldTable& F, const Code& c);

// Coordinate permutation composed with nonzero per-coordinate scaling:
// y[perm[i]] = scale[perm[i]] * x[i].
struct MonomialTransform {
    std::vector<int> perm;  // old index -> new index, a bijection
    std::vector<Sym> scale; // indexed by new position, all nonzero

    static MonomialTransform identity(int n);
    MonomialTransform inverse(const FieldTable& F) const;
};

Word apply_monomial(const MonomialTransform& psi, const FieldTable& F, std::span<const Sym> x);
Code apply_monomial(const MonomialTransform& psi, const FieldTable& F, const Code& c);

// Base-q packing of a word (coordinate 0 most significant). Only valid
// when q^n fits in 64 bits; all covering-check spaces do.
std::uint64_t pack_word(std::span<const Sym> w, int q);
Word unpack_word(std::uint64_t v, int q, int n);

} // namespace muq

#endif
