#ifndef MUQ_KERNELS_HPP
#define MUQ_KERNELS_HPP

#include "muq/types.hpp"

#include <cstddef>
#include <string_view>

namespace muq::kernels {

// Hot inner loops over symbol vectors (one byte per coordinate). Every
// variant must produce bit-identical results; the unit suite cross-checks
// them on random inputs against the scalar reference.

// Hamming distance between two length-n vectors.
using DistanceFn = unsigned (*)(const Sym* a, const Sym* b, std::size_t n);

// Minimum distance from `a` to the rows of the row-major matrix `rows`
// (row_count x n). Rows are scanned in order; scanning stops as soon as the
// running minimum is <= stop, so the result is exact whenever it is > stop.
// `hit` (optional) receives the index of the row that produced the result.
using MinAgainstFn = unsigned (*)(const Sym* a, const Sym* rows, std::size_t row_count,
                                  std::size_t n, unsigned stop, std::size_t* hit);

struct Variant {
    const char* name;
    bool (*available)();
    DistanceFn distance;
    MinAgainstFn min_against;
};

// All compiled-in variants, scalar reference first.
std::span<const Variant> variants();

// The runtime-selected variant (best available, unless overridden).
const Variant& active();

// Force a specific variant by name ("scalar", "swar", "avx2"). Throws
// BadFile for unknown or unavailable names.
void select(std::string_view name);

inline unsigned distance(std::span<const Sym> a, std::span<const Sym> b) {
    require(a.size() == b.size(), Err::LengthMismatch,
            "word lengths " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    return active().distance(a.data(), b.data(), a.size());
}

} // namespace muq::kernels

#endif
