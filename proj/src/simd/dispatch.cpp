#include "binceo/simd/kernels.hpp"

#include <cstdlib>
#include <string>

namespace binceo::simd {

std::string_view isa_name(isa which)
{
    switch (which) {
    case isa::scalar: return "scalar";
    case isa::avx2: return "avx2";
    case isa::neon: return "neon";
    }
    return "unknown";
}

namespace {

const kernel_table& select()
{
    if (const char* forced = std::getenv("BINCEO_ISA")) {
        const std::string name(forced);
        if (name == "scalar") return scalar_kernels();
        if (name == "avx2" && avx2_kernels()) return *avx2_kernels();
        if (name == "neon" && neon_kernels()) return *neon_kernels();
        return scalar_kernels();
    }
    if (const auto* t = avx2_kernels()) return *t;
    if (const auto* t = neon_kernels()) return *t;
    return scalar_kernels();
}

} // namespace

const kernel_table& active()
{
    static const kernel_table& table = select();
    return table;
}

} // namespace binceo::simd
