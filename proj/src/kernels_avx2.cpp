// AVX2 variants of the distance kernels. Compiled with per-function target
// attributes so the translation unit itself needs no -mavx2; callers go
// through the runtime dispatch in kernels.cpp.

#include "muq/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace muq::kernels {

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

__attribute__((target("avx2,popcnt"))) unsigned avx2_distance(const Sym* a, const Sym* b,
                                                              std::size_t n) {
    unsigned d = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i eq = _mm256_cmpeq_epi8(va, vb);
        const unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(eq));
        d += 32u - static_cast<unsigned>(__builtin_popcount(mask));
    }
    if (i + 16 <= n) {
        const __m128i va = _mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i));
        const __m128i vb = _mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i));
        const unsigned mask = static_cast<unsigned>(_mm_movemask_epi8(_mm_cmpeq_epi8(va, vb)));
        d += 16u - static_cast<unsigned>(__builtin_popcount(mask & 0xffffu));
        i += 16;
    }
    for (; i < n; ++i) d += (a[i] != b[i]);
    return d;
}

__attribute__((target("avx2,popcnt"))) unsigned avx2_min_against(const Sym* a, const Sym* rows,
                                                                 std::size_t row_count,
                                                                 std::size_t n, unsigned stop,
                                                                 std::size_t* hit) {
    unsigned best = static_cast<unsigned>(n) + 1;
    std::size_t best_row = row_count;
    for (std::size_t r = 0; r < row_count; ++r) {
        const unsigned d = avx2_distance(a, rows + r * n, n);
        if (d < best) {
            best = d;
            best_row = r;
            if (best <= stop) break;
        }
    }
    if (hit) *hit = best_row;
    return best;
}

} // namespace muq::kernels

#endif
