#include "binceo/simd/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#define BINCEO_HAVE_NEON_PATH 1
#include <arm_neon.h>
#else
#define BINCEO_HAVE_NEON_PATH 0
#endif

namespace binceo::simd {

#if BINCEO_HAVE_NEON_PATH
namespace {

void xor_bytes_neon(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) vst1q_u8(out + i, veorq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
    for (; i < n; ++i) out[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
}

std::size_t count_mismatch_neon(const std::uint8_t* a, const std::uint8_t* b, std::size_t n)
{
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        // 0xFF where different, shifted down to 1 per lane
        const uint8x16_t diff = vshrq_n_u8(vmvnq_u8(vceqq_u8(vld1q_u8(a + i), vld1q_u8(b + i))), 7);
        count += vaddvq_u8(diff);
    }
    for (; i < n; ++i) count += (a[i] != b[i]);
    return count;
}

void add_clamp_neon(const double* a, const double* b, double* out, std::size_t n, double bound)
{
    const float64x2_t hi = vdupq_n_f64(bound);
    const float64x2_t lo = vdupq_n_f64(-bound);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t sum = vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        vst1q_f64(out + i, vminq_f64(vmaxq_f64(sum, lo), hi));
    }
    for (; i < n; ++i) {
        const double sum = a[i] + b[i];
        out[i] = sum < -bound ? -bound : (bound < sum ? bound : sum);
    }
}

void hard_decision_neon(const double* llr, std::uint8_t* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = llr[i] < 0.0 ? 1 : 0;
}

double blocked_sum_neon(const double* x, std::size_t n)
{
    float64x2_t acc01 = vdupq_n_f64(0.0);
    float64x2_t acc23 = vdupq_n_f64(0.0);
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) {
        acc01 = vaddq_f64(acc01, vld1q_f64(x + i));
        acc23 = vaddq_f64(acc23, vld1q_f64(x + i + 2));
    }
    double total = (vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1)) +
                   (vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1));
    for (std::size_t i = body; i < n; ++i) total += x[i];
    return total;
}

constexpr kernel_table neon_table{
    isa::neon,
    xor_bytes_neon,
    count_mismatch_neon,
    add_clamp_neon,
    hard_decision_neon,
    blocked_sum_neon,
};

} // namespace

const kernel_table* neon_kernels() { return &neon_table; }

#else

const kernel_table* neon_kernels() { return nullptr; }

#endif

} // namespace binceo::simd
