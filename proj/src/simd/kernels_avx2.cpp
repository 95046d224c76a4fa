#include "binceo/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define BINCEO_HAVE_AVX2_PATH 1
#include <immintrin.h>
#else
#define BINCEO_HAVE_AVX2_PATH 0
#endif

namespace binceo::simd {

#if BINCEO_HAVE_AVX2_PATH
namespace {

#define BINCEO_AVX2 __attribute__((target("avx2")))

BINCEO_AVX2 void xor_bytes_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
                                std::size_t n)
{
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_xor_si256(va, vb));
    }
    for (; i < n; ++i) out[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
}

BINCEO_AVX2 std::size_t count_mismatch_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n)
{
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const auto equal = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        count += static_cast<std::size_t>(__builtin_popcount(~equal));
    }
    for (; i < n; ++i) count += (a[i] != b[i]);
    return count;
}

BINCEO_AVX2 void add_clamp_avx2(const double* a, const double* b, double* out, std::size_t n,
                                double bound)
{
    const __m256d hi = _mm256_set1_pd(bound);
    const __m256d lo = _mm256_set1_pd(-bound);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_max_pd(sum, lo), hi));
    }
    for (; i < n; ++i) {
        const double sum = a[i] + b[i];
        out[i] = sum < -bound ? -bound : (bound < sum ? bound : sum);
    }
}

BINCEO_AVX2 void hard_decision_avx2(const double* llr, std::uint8_t* out, std::size_t n)
{
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(llr + i), zero, _CMP_LT_OQ));
        out[i] = static_cast<std::uint8_t>(mask & 1);
        out[i + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
        out[i + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
        out[i + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
    }
    for (; i < n; ++i) out[i] = llr[i] < 0.0 ? 1 : 0;
}

BINCEO_AVX2 double blocked_sum_avx2(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = body; i < n; ++i) total += x[i];
    return total;
}

#undef BINCEO_AVX2

constexpr kernel_table avx2_table{
    isa::avx2,
    xor_bytes_avx2,
    count_mismatch_avx2,
    add_clamp_avx2,
    hard_decision_avx2,
    blocked_sum_avx2,
};

} // namespace

const kernel_table* avx2_kernels()
{
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2_table : nullptr;
}

#else

const kernel_table* avx2_kernels() { return nullptr; }

#endif

} // namespace binceo::simd
