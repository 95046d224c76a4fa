#pragma once

// Dense inner-loop kernels with a scalar reference and ISA-specific variants.
//
// Every variant must be bit-identical to the scalar reference: bitwise ops and
// lane-wise IEEE adds are exact, and the reduction kernel uses a fixed
// four-lane blocked order that the scalar code reproduces.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace binceo::simd {

enum class isa { scalar, avx2, neon };

std::string_view isa_name(isa which);

struct kernel_table {
    isa which;

    // out[i] = a[i] ^ b[i]
    void (*xor_bytes)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
    // number of i with a[i] != b[i]; inputs are 0/1 bytes
    std::size_t (*count_mismatch)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
    // out[i] = clamp(a[i] + b[i], -bound, +bound)
    void (*add_clamp)(const double* a, const double* b, double* out, std::size_t n, double bound);
    // out[i] = (llr[i] < 0) ? 1 : 0
    void (*hard_decision)(const double* llr, std::uint8_t* out, std::size_t n);
    // four-lane blocked sum: lane l accumulates x[4b + l], lanes combine as
    // (l0 + l1) + (l2 + l3), then the n % 4 tail is added in order
    double (*blocked_sum)(const double* x, std::size_t n);
};

const kernel_table& scalar_kernels();

// nullptr when the variant is not compiled in or the CPU lacks the feature.
const kernel_table* avx2_kernels();
const kernel_table* neon_kernels();

// Best available table. BINCEO_ISA=scalar|avx2|neon in the environment
// overrides the automatic choice (falls back to scalar if unavailable).
const kernel_table& active();

} // namespace binceo::simd
