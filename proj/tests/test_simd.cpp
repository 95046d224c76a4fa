#include "doctest.h"

#include <cstring>
#include <vector>

#include "binceo/simd/kernels.hpp"
#include "support.hpp"

using namespace binceo;

namespace {

std::vector<const simd::kernel_table*> variants()
{
    std::vector<const simd::kernel_table*> out;
    if (const auto* t = simd::avx2_kernels()) out.push_back(t);
    if (const auto* t = simd::neon_kernels()) out.push_back(t);
    return out;
}

bool same_bits(double a, double b)
{
    return std::memcmp(&a, &b, sizeof a) == 0;
}

} // namespace

TEST_CASE("scalar kernels")
{
    const auto& k = simd::scalar_kernels();
    const std::uint8_t a[] = {0, 1, 1, 0, 1};
    const std::uint8_t b[] = {1, 1, 0, 0, 0};
    std::uint8_t out[5];
    k.xor_bytes(a, b, out, 5);
    CHECK(std::vector<std::uint8_t>(out, out + 5) == std::vector<std::uint8_t>{1, 0, 1, 0, 1});
    CHECK(k.count_mismatch(a, b, 5) == 3);

    const double x[] = {29.0, -29.0, 1.0};
    const double y[] = {2.0, -2.0, 0.5};
    double s[3];
    k.add_clamp(x, y, s, 3, 30.0);
    CHECK(s[0] == 30.0);
    CHECK(s[1] == -30.0);
    CHECK(s[2] == 1.5);
    std::uint8_t hard[3];
    k.hard_decision(s, hard, 3);
    CHECK(hard[1] == 1);
    CHECK(hard[0] == 0);

    const double v[] = {1, 2, 3, 4, 5, 6};
    // lanes (1+5) (2+6) 3 4, combined as (6 + 8) + (3 + 4)
    CHECK(k.blocked_sum(v, 6) == 21.0);
    CHECK(k.blocked_sum(v, 0) == 0.0);
}

TEST_CASE("dispatch")
{
    const auto& active = simd::active();
    CHECK_FALSE(simd::isa_name(active.which).empty());
    CHECK(simd::isa_name(simd::isa::scalar) == "scalar");
}

TEST_CASE("property: every compiled variant matches the scalar reference bit for bit")
{
    const auto& ref = simd::scalar_kernels();
    Rng rng(8);
    for (const auto* k : variants()) {
        for (std::size_t n = 0; n < 68; ++n) {
            for (int rep = 0; rep < 5; ++rep) {
                std::vector<std::uint8_t> a(n), b(n), o1(n), o2(n);
                for (std::size_t i = 0; i < n; ++i) {
                    a[i] = static_cast<std::uint8_t>(testing::coin(rng));
                    b[i] = static_cast<std::uint8_t>(testing::coin(rng));
                }
                ref.xor_bytes(a.data(), b.data(), o1.data(), n);
                k->xor_bytes(a.data(), b.data(), o2.data(), n);
                CHECK(o1 == o2);
                CHECK(ref.count_mismatch(a.data(), b.data(), n) == k->count_mismatch(a.data(), b.data(), n));

                const auto x = testing::random_llrs(rng, n, 40.0);
                const auto y = testing::random_llrs(rng, n, 40.0);
                std::vector<double> s1(n), s2(n);
                ref.add_clamp(x.data(), y.data(), s1.data(), n, 30.0);
                k->add_clamp(x.data(), y.data(), s2.data(), n, 30.0);
                bool equal = true;
                for (std::size_t i = 0; i < n; ++i) equal = equal && same_bits(s1[i], s2[i]);
                CHECK(equal);

                ref.hard_decision(x.data(), o1.data(), n);
                k->hard_decision(x.data(), o2.data(), n);
                CHECK(o1 == o2);

                CHECK(same_bits(ref.blocked_sum(x.data(), n), k->blocked_sum(x.data(), n)));
            }
        }
    }
}
