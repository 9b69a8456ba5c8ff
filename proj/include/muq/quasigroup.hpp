#ifndef MUQ_QUASIGROUP_HPP
#define MUQ_QUASIGROUP_HPP

#include "muq/code.hpp"
#include "muq/gf.hpp"

#include <functional>
#include <optional>

namespace muq {

// Total lookup table Sigma^m -> Sigma with the unique-recovery property:
// in z0 = f(z1..zm), any m of the m+1 values determine the last. Stored
// row-major, x1 most significant.
struct MultaryQuasigroup {
    int arity = 0;
    int order = 0;
    std::vector<Sym> table;

    Sym eval(std::span<const Sym> args) const {
        std::size_t idx = 0;
        for (Sym a : args) idx = idx * order + a;
        return table[idx];
    }

    // Unique y with f(prefix.., y) = target (scan of one table row).
    Sym solve_last(std::span<const Sym> prefix, Sym target) const;

    bool operator==(const MultaryQuasigroup&) const = default;
};

struct QgCheck {
    bool ok = false;
    int position = 0; // violating argument position, 1-based
    Word fixed;       // the other m-1 arguments, in order
    Sym value = 0;    // the repeated value on that line
    std::string detail;
};

// Verifies the quasigroup property in every direction; BadShape if the
// table length is not order^m.
QgCheck qg_check(std::span<const Sym> table, int m, int order);
inline QgCheck qg_check(const MultaryQuasigroup& f) { return qg_check(f.table, f.arity, f.order); }

// f(x) = c + sum coeffs_i * x_i over GF(q); all coefficients nonzero.
MultaryQuasigroup qg_linear(const FieldTable& F, int m, std::span<const Sym> coeffs, Sym c);

// Convenience: all-ones coefficients, constant 0 (the plain block sum).
MultaryQuasigroup qg_sum(const FieldTable& F, int m);

// Recovers (coeffs, c) if f is affine over GF(q), i.e. built like qg_linear.
std::optional<std::pair<Word, Sym>> linear_form(const FieldTable& F, const MultaryQuasigroup& f);

// Exact count of m-ary quasigroups of order `order` by deterministic
// backtracking (cells row-major, candidate values ascending). Feasibility
// caps: order 2 -> m <= 6, order 3 -> m <= 3, order 4 -> m <= 2,
// order 5 or 6 -> m = 1; TooLarge otherwise.
std::uint64_t qg_count(int m, int order, int threads = 1);

// First k tables of the same deterministic enumeration stream (no
// feasibility cap; k bounds the work).
std::vector<MultaryQuasigroup> qg_first(int m, int order, std::size_t k);

// True iff {(y | v(y) | h(y)) : y in F_q^{q-1}} is a perfect code.
bool vh_pair_check(const MultaryQuasigroup& v, const MultaryQuasigroup& h, const FieldTable& F);

// The ((q-1)k+1)-ary quasigroup sigma(x_1..x_k, y) = V(v(x_1),..,v(x_k), y)
// where each x_j is a (q-1)-symbol block. Table materialized eagerly.
MultaryQuasigroup sigma_from_component_law(const MultaryQuasigroup& V, const MultaryQuasigroup& v,
                                           int k);

// Blockwise profile maps: t quasigroups of arity l, uniform order.
struct SigmaFamily {
    int t = 0;
    int l = 0;
    int order = 0;
    std::vector<MultaryQuasigroup> sigmas;

    static SigmaFamily uniform(int t, MultaryQuasigroup sigma);
    static SigmaFamily linear_sums(const FieldTable& F, int t, int l);

    bool operator==(const SigmaFamily&) const = default;
};

// (sigma_1(x_1), ..., sigma_t(x_t)) over the t leading blocks of length l;
// the trailing n0 coordinates are ignored.
Word sigma_profile(std::span<const Sym> x, const CodeParameters& layout, const SigmaFamily& sigma);

} // namespace muq

#endif
