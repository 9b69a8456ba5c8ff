#ifndef MUQ_HAMMING_HPP
#define MUQ_HAMMING_HPP

#include "muq/code.hpp"

namespace muq {

// Columns are the normalized projective points of GF(q)^r: first nonzero
// entry 1, pairwise distinct, in lexicographic order (coordinate 0 most
// significant). t = (q^r - 1)/(q - 1).
struct ParityCheckMatrix {
    int q = 0;
    int r = 0;
    int t = 0;
    std::vector<Word> columns;
};

// All normalized projective points, lexicographic; TooLarge past 10^5.
std::vector<Word> projective_points(int q, int r);

ParityCheckMatrix parity_check_matrix(int q, int r);

// s(x) = sum_i x_i * col_i in GF(q)^r.
Word syndrome(const ParityCheckMatrix& H, const FieldTable& F, std::span<const Sym> x);

// Base-q packing of the syndrome; the canonical part index of coset
// partitions.
std::size_t syndrome_index(const ParityCheckMatrix& H, const FieldTable& F, std::span<const Sym> x);

// Null space of parity_check_matrix(q, r), enumerated from a reduced
// basis; q^{t-r} capped at 2^22.
Code hamming_code(const FieldTable& F, int r);

// Partition of F_q^{n0} into (q-1) n0 + 1 pairwise disjoint perfect codes.
struct PerfectPartition {
    int q = 0;
    int n0 = 0;
    std::vector<Code> parts;

    // part index of a word; dense lookup over F_q^{n0}
    int gamma(std::span<const Sym> y) const;

    void rebuild_gamma(); // after loading parts from a file
    std::vector<std::int32_t> gamma_table;
};

// For n0 = (q^s-1)/(q-1): the q^s cosets of hamming_code(q, s) indexed by
// canonical syndrome (part 0 contains the zero word); for n0 = 1 the q
// singletons. BadLength if n0 is not an admissible length.
PerfectPartition perfect_partition(const FieldTable& F, int n0);

struct PartitionCheck {
    bool ok = false;
    std::string detail;
};
// Parts pairwise disjoint perfect codes covering F_q^{n0}.
PartitionCheck partition_verify(const PerfectPartition& p);

} // namespace muq

#endif
