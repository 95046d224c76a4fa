#include "doctest.h"

#include <cmath>
#include <vector>

#include "binceo/codec.hpp"
#include "binceo/error.hpp"
#include "binceo/graphs.hpp"
#include "binceo/oracles.hpp"
#include "support.hpp"

using namespace binceo;

namespace {

LdgmCode identity_code(std::size_t n)
{
    std::vector<std::vector<std::uint32_t>> f;
    for (std::uint32_t i = 0; i < n; ++i) f.push_back({i});
    return LdgmCode(SparseBipartiteGraph(n, std::move(f)));
}

} // namespace

TEST_CASE("identity code copies its input")
{
    Rng rng(1);
    const BitSequence y = bernoulli_bits(rng, 64, 0.5);
    const auto r = bias_propagation_quantize(identity_code(64), y, 0.1, 7);
    CHECK(r.quantized == y);
    CHECK(r.info_bits == y);
    CHECK(r.empirical_distortion == 0.0);
}

TEST_CASE("a codeword on a tree code quantizes to itself")
{
    Rng rng(2);
    for (int t = 0; t < 10; ++t) {
        const auto g = testing::random_forest(rng, 12, 20);
        if (g.n_fac() == 0) continue;
        std::vector<std::vector<std::uint32_t>> f;
        for (std::uint32_t i = 0; i < 12; ++i) f.push_back({i});
        for (std::size_t j = 0; j < g.n_fac(); ++j) f.emplace_back(g.factor(j).begin(), g.factor(j).end());
        const LdgmCode code(SparseBipartiteGraph(12, std::move(f)));
        const BitSequence w = bernoulli_bits(rng, 12, 0.5);
        const auto r = bias_propagation_quantize(code, code.encode(w), 0.05, rng());
        CHECK(r.empirical_distortion == 0.0);
        CHECK(r.quantized == code.encode(r.info_bits));
    }
}

TEST_CASE("quantized word is always the encoding of the returned information bits")
{
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const LdgmCode code = build_systematic_ldgm(300, 0.5, default_compound_distributions().ldgm, rng());
        const BitSequence y = bernoulli_bits(rng, 300, 0.5);
        const auto r = bias_propagation_quantize(code, y, 0.11, rng());
        CHECK(r.quantized == code.encode(r.info_bits));
        CHECK(r.empirical_distortion == doctest::Approx(hamming_rate(r.quantized, y)));
    }
}

TEST_CASE("quantization is deterministic in its seed")
{
    const LdgmCode code = build_systematic_ldgm(400, 0.55, default_compound_distributions().ldgm, 11);
    Rng rng(4);
    const BitSequence y = bernoulli_bits(rng, 400, 0.5);
    const auto a = bias_propagation_quantize(code, y, 0.1, 5);
    const auto b = bias_propagation_quantize(code, y, 0.1, 5);
    CHECK(a.info_bits == b.info_bits);
    CHECK(a.message_rounds == b.message_rounds);
}

TEST_CASE("quantizer input validation")
{
    const LdgmCode code = identity_code(8);
    CHECK_THROWS_AS(bias_propagation_quantize(code, BitSequence(7), 0.1, 1), dimension_error);
    QuantizerOptions bad;
    bad.decimation_fraction = 0.0;
    CHECK_THROWS_AS(bias_propagation_quantize(code, BitSequence(8), 0.1, 1, bad), domain_error);
}

TEST_CASE("syndrome of a small word")
{
    const LdpcCode code(SparseBipartiteGraph(3, {{0, 1}, {1, 2}}));
    CHECK(syndrome_generate(code, BitSequence{1, 0, 1}) == BitSequence{1, 1});
    CHECK(syndrome_generate(code, BitSequence{1, 1, 1}) == BitSequence{0, 0});
    CHECK_THROWS_AS(syndrome_generate(code, BitSequence{1, 1}), dimension_error);
}

TEST_CASE("property: encoding and syndrome formation are linear")
{
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 20 + uniform_below(rng, 200);
        const auto g = sample_graph(DegreeDistribution{{}, {{3, 1.0}}}, n / 2, n, rng());
        const LdgmCode ldgm(g);
        const BitSequence a = bernoulli_bits(rng, ldgm.k(), 0.5);
        const BitSequence b = bernoulli_bits(rng, ldgm.k(), 0.5);
        CHECK(ldgm.encode(a ^ b) == (ldgm.encode(a) ^ ldgm.encode(b)));

        const LdpcCode ldpc(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, n, n / 3, rng()));
        const BitSequence x = bernoulli_bits(rng, n, 0.3);
        const BitSequence y = bernoulli_bits(rng, n, 0.3);
        CHECK(syndrome_generate(ldpc, x ^ y) == (syndrome_generate(ldpc, x) ^ syndrome_generate(ldpc, y)));
    }
}

TEST_CASE("distortion falls as the LDGM rate rises")
{
    const double rates[] = {0.3, 0.5, 0.7};
    double means[3] = {};
    for (int r = 0; r < 3; ++r) {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const LdgmCode code =
                build_systematic_ldgm(300, rates[r], default_compound_distributions().ldgm, derive_seed(s, "code"));
            Rng rng(derive_seed(s, "source"));
            const BitSequence y = bernoulli_bits(rng, 300, 0.5);
            // target at the rate-distortion crossover for this rate
            double lo = 0.0, hi = 0.5;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (1.0 - binary_entropy(mid) > rates[r] ? lo : hi) = mid;
            }
            means[r] += bias_propagation_quantize(code, y, lo, s).empirical_distortion / 20.0;
        }
    }
    CHECK(means[0] > means[1]);
    CHECK(means[1] > means[2]);
}

TEST_CASE("quantizer never beats exhaustive search")
{
    Rng rng(6);
    for (int t = 0; t < 10; ++t) {
        const LdgmCode code = build_systematic_ldgm(24, 0.5, default_compound_distributions().ldgm, rng());
        const BitSequence y = bernoulli_bits(rng, 24, 0.5);
        const auto bp = bias_propagation_quantize(code, y, 0.11, rng());
        const auto bf = oracles::brute_force_quantize(code, y);
        CHECK(bp.empirical_distortion >= bf.distortion);
    }
}

TEST_CASE("encoder pipelines")
{
    const auto dists = default_compound_distributions();
    const CompoundCode cc1 = build_nested_compound(400, 0.6, 0.0, 0.5, 30, dists, 1);
    const CompoundCode cc2 = build_nested_compound(400, 0.6, 0.5, 1.0, 30, dists, 2);
    Rng rng(7);
    const BitSequence x = bernoulli_bits(rng, 400, 0.5);
    const BitSequence y1 = x ^ bernoulli_bits(rng, 400, 0.15);
    const BitSequence y2 = x ^ bernoulli_bits(rng, 400, 0.15);
    const TestChannelPair targets(0.1, 0.1);

    const JointEncoding joint = encode_joint(cc1, cc2, y1, y2, targets, 9);
    CHECK(joint.link1.syndrome == syndrome_generate(cc1.ldpc, joint.quant1.quantized));
    CHECK(joint.link2.syndrome == syndrome_generate(cc2.ldpc, joint.quant2.quantized));
    CHECK(joint.link1.syndrome.size() == cc1.ldpc.m());

    const SuccessiveEncoding succ = encode_successive(cc1, cc2.ldgm, y1, y2, targets, 9);
    CHECK(succ.links.info_bits2.size() == cc2.ldgm.k());
    // the decoder re-encodes the information bits and must get u2 bit-exactly
    CHECK(cc2.ldgm.encode(succ.links.info_bits2) == succ.quant2.quantized);
    CHECK(succ.links.syndrome1 == syndrome_generate(cc1.ldpc, succ.quant1.quantized));
}
