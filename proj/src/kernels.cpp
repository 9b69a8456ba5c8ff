#include "muq/kernels.hpp"

#include <bit>
#include <cstring>

namespace muq::kernels {

namespace {

unsigned scalar_distance(const Sym* a, const Sym* b, std::size_t n) {
    unsigned d = 0;
    for (std::size_t i = 0; i < n; ++i) d += (a[i] != b[i]);
    return d;
}

template <DistanceFn Dist>
unsigned generic_min_against(const Sym* a, const Sym* rows, std::size_t row_count, std::size_t n,
                             unsigned stop, std::size_t* hit) {
    unsigned best = static_cast<unsigned>(n) + 1;
    std::size_t best_row = row_count;
    for (std::size_t r = 0; r < row_count; ++r) {
        const unsigned d = Dist(a, rows + r * n, n);
        if (d < best) {
            best = d;
            best_row = r;
            if (best <= stop) break;
        }
    }
    if (hit) *hit = best_row;
    return best;
}

// SWAR: eight coordinates per 64-bit step. A byte of x = a ^ b is nonzero
// exactly where the coordinates differ; the per-byte add below cannot
// carry across byte lanes, so the high bits count the nonzero bytes.
unsigned swar_distance(const Sym* a, const Sym* b, std::size_t n) {
    constexpr std::uint64_t low7 = 0x7f7f7f7f7f7f7f7full;
    constexpr std::uint64_t hi = 0x8080808080808080ull;
    unsigned d = 0;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        std::uint64_t wa, wb;
        std::memcpy(&wa, a + i, 8);
        std::memcpy(&wb, b + i, 8);
        const std::uint64_t x = wa ^ wb;
        const std::uint64_t nonzero = (((x & low7) + low7) | x) & hi;
        d += static_cast<unsigned>(std::popcount(nonzero));
    }
    for (; i < n; ++i) d += (a[i] != b[i]);
    return d;
}

bool always() { return true; }

} // namespace

#if defined(__x86_64__) || defined(__i386__)
// defined in kernels_avx2.cpp
bool avx2_available();
unsigned avx2_distance(const Sym* a, const Sym* b, std::size_t n);
unsigned avx2_min_against(const Sym* a, const Sym* rows, std::size_t row_count, std::size_t n,
                          unsigned stop, std::size_t* hit);
#endif

std::span<const Variant> variants() {
    static const Variant table[] = {
        {"scalar", always, scalar_distance, generic_min_against<scalar_distance>},
        {"swar", always, swar_distance, generic_min_against<swar_distance>},
#if defined(__x86_64__) || defined(__i386__)
        {"avx2", avx2_available, avx2_distance, avx2_min_against},
#endif
    };
    return table;
}

namespace {

const Variant* pick_best() {
    const Variant* best = &variants().front();
    for (const Variant& v : variants())
        if (v.available()) best = &v; // listed in ascending preference
    return best;
}

const Variant*& selected() {
    static const Variant* v = pick_best();
    return v;
}

} // namespace

const Variant& active() { return *selected(); }

void select(std::string_view name) {
    for (const Variant& v : variants()) {
        if (name == v.name) {
            require(v.available(), Err::BadFile,
                    "kernel variant '" + std::string(name) + "' not available on this machine");
            selected() = &v;
            return;
        }
    }
    fail(Err::BadFile, "unknown kernel variant '" + std::string(name) + "'");
}

} // namespace muq::kernels
