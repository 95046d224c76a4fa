#include "binceo/simd/kernels.hpp"

#include <algorithm>

namespace binceo::simd {
namespace {

void xor_bytes_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
}

std::size_t count_mismatch_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += (a[i] != b[i]);
    return count;
}

void add_clamp_scalar(const double* a, const double* b, double* out, std::size_t n, double bound)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(a[i] + b[i], -bound, bound);
}

void hard_decision_scalar(const double* llr, std::uint8_t* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = llr[i] < 0.0 ? 1 : 0;
}

double blocked_sum_scalar(const double* x, std::size_t n)
{
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t body = n - n % 4;
    for (std::size_t i = 0; i < body; i += 4) {
        lane[0] += x[i];
        lane[1] += x[i + 1];
        lane[2] += x[i + 2];
        lane[3] += x[i + 3];
    }
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = body; i < n; ++i) total += x[i];
    return total;
}

constexpr kernel_table scalar_table{
    isa::scalar,
    xor_bytes_scalar,
    count_mismatch_scalar,
    add_clamp_scalar,
    hard_decision_scalar,
    blocked_sum_scalar,
};

} // namespace

const kernel_table& scalar_kernels() { return scalar_table; }

} // namespace binceo::simd
