#ifndef MUQ_COMPONENTS_HPP
#define MUQ_COMPONENTS_HPP

#include "muq/hamming.hpp"
#include "muq/quasigroup.hpp"

namespace muq {

// A distance-3 code whose every word has blockwise profile mu under the
// attached sigma family (the generalized parity-check law).
struct MuComponent {
    Code code;
    Word mu;
    CodeParameters layout;
    SigmaFamily sigma;
};

// Both component constructions share the coordinate scheme: t blocks of
// k(q-1)+1 symbols (k sub-blocks x_ij of length q-1, then y_i), followed
// by the tail z_1..z_k.
struct ComponentScheme {
    int q = 0;
    int k = 0;
    int t = 0;

    int l() const { return (q - 1) * k + 1; }
    int n() const { return l() * t + k; }
    int block_start(int i) const { return i * l(); }
    int sub_block(int i, int j) const { return block_start(i) + j * (q - 1); }
    int y_pos(int i) const { return block_start(i) + k * (q - 1); }
    int z_pos(int j) const { return l() * t + j; }
};

enum class BuildRoute {
    automatic, // filter when q^n <= 2^24, solve above
    filter,    // scan the whole space against the defining conditions
    solve,     // enumerate free coordinates, solve constraints by inversion
};

// Mollard-Phelps component: words whose V-condition equals mu and whose
// H-condition lands in the perfect code csharp in F_q^k.
MuComponent build_mollard_phelps(const FieldTable& F, const Word& mu, const Code& csharp,
                                 const MultaryQuasigroup& v, const MultaryQuasigroup& h,
                                 std::span<const MultaryQuasigroup> V,
                                 std::span<const MultaryQuasigroup> H,
                                 BuildRoute route = BuildRoute::automatic);

// Generalized Phelps component: the H-condition is replaced by
// Q(gamma_1(h-folds of block 1), ..., gamma_t(...)) = gamma_{t+1}(z);
// partitions holds the t+1 perfect partitions of F_q^k and Q is a t-ary
// quasigroup of order qk-k+1.
MuComponent build_phelps(const FieldTable& F, const Word& mu,
                         std::span<const PerfectPartition> partitions, const MultaryQuasigroup& v,
                         const MultaryQuasigroup& h, std::span<const MultaryQuasigroup> V,
                         const MultaryQuasigroup& Q, BuildRoute route = BuildRoute::automatic);

struct ComponentCheck {
    bool ok = false;
    enum class Fail { none, law, distance, cardinality } kind = Fail::none;
    Word witness;
    std::string detail;
};

// (i) law sigma(x) = mu for every word, (ii) min distance >= 3, (iii) for
// combinable layouts, |code| = q^{n-m-(t-r)}.
ComponentCheck component_verify(const MuComponent& K);

// Translation by a vector z supported on the first coordinate of each
// block with sigma(z) = target_mu - mu; requires every sigma_i linear with
// zero constant (NonlinearSigma otherwise).
MuComponent component_shift(const FieldTable& F, const MuComponent& K, const Word& target_mu);

} // namespace muq

#endif
