#include "doctest.h"

#include <cmath>

#include "binceo/decoders.hpp"
#include "binceo/error.hpp"
#include "binceo/oracles.hpp"
#include "support.hpp"

using namespace binceo;

namespace {

LlrSequence prior_toward(const BitSequence& u, double magnitude)
{
    LlrSequence out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j] ? -magnitude : magnitude;
    return out;
}

} // namespace

TEST_CASE("side information prior")
{
    const LlrSequence llr = side_info_prior(BitSequence{0, 1}, 0.1);
    CHECK(llr[0] == doctest::Approx(std::log(9.0)));
    CHECK(llr[0] == doctest::Approx(2.1972245773).epsilon(1e-9));
    CHECK(llr[1] == doctest::Approx(-std::log(9.0)));
    const LlrSequence flat = side_info_prior(BitSequence{0, 1, 1}, 0.5);
    for (double v : flat) CHECK(v == 0.0);
    CHECK(side_info_prior(BitSequence{0}, 0.0)[0] == llr_clamp_bound);
}

TEST_CASE("property: flipping side information negates the prior")
{
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const BitSequence u = bernoulli_bits(rng, 30, 0.5);
        BitSequence v = u;
        for (std::size_t j = 0; j < v.size(); ++j) v.flip(j);
        const double q = testing::uniform(rng, 0.001, 0.5);
        const LlrSequence a = side_info_prior(u, q);
        const LlrSequence b = side_info_prior(v, q);
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == -b[j]);
    }
}

TEST_CASE("soften through a BSC")
{
    CHECK(soften_llr(3.0, 0.0) == doctest::Approx(3.0));
    CHECK(soften_llr(3.0, 0.5) == doctest::Approx(0.0));
    CHECK(soften_llr(-2.0, 0.2) == doctest::Approx(-soften_llr(2.0, 0.2)));
    CHECK(std::abs(soften_llr(25.0, 0.1)) <= std::log(9.0) + 1e-9);
}

TEST_CASE("a strong, correct prior decodes immediately")
{
    const LdpcCode code(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, 600, 300, 4));
    Rng rng(2);
    const BitSequence u = bernoulli_bits(rng, 600, 0.5);
    const auto r = sum_product_decode(code, code.syndrome(u), prior_toward(u, 8.0));
    CHECK(r.syndrome_satisfied);
    CHECK(r.iterations_used <= 2);
    CHECK(r.u_hat == u);
}

TEST_CASE("all-zero syndrome with a zero-leaning prior")
{
    const LdpcCode code(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, 200, 100, 5));
    const auto r = sum_product_decode(code, BitSequence(100), LlrSequence(200, 0.7));
    CHECK(r.syndrome_satisfied);
    CHECK(r.u_hat == BitSequence(200));
}

TEST_CASE("decoder input validation")
{
    const LdpcCode code(SparseBipartiteGraph(3, {{0, 1}}));
    CHECK_THROWS_AS(sum_product_decode(code, BitSequence{1, 0}, LlrSequence(3)), dimension_error);
    CHECK_THROWS_AS(sum_product_decode(code, BitSequence{1}, LlrSequence(2)), dimension_error);
    SumProductOptions none;
    none.max_iters = 0;
    CHECK_THROWS_AS(sum_product_decode(code, BitSequence{1}, LlrSequence(3), none), domain_error);
    CHECK_THROWS_AS(side_info_prior(BitSequence{1}, 0.7), domain_error);
}

TEST_CASE("property: sum-product is exact on forests")
{
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + uniform_below(rng, 11);
        // single-bit checks pin their bit, which the clamp cannot represent
        const auto forest = testing::random_forest(rng, n, 1 + uniform_below(rng, n - 1));
        std::vector<std::vector<std::uint32_t>> checks;
        for (std::size_t f = 0; f < forest.n_fac(); ++f) {
            if (forest.factor_degree(f) >= 2) checks.emplace_back(forest.factor(f).begin(), forest.factor(f).end());
        }
        if (checks.empty()) continue;
        const LdpcCode code(SparseBipartiteGraph(n, std::move(checks)));
        const BitSequence u = bernoulli_bits(rng, n, 0.5);
        const BitSequence s = code.syndrome(u);
        const LlrSequence prior = testing::random_llrs(rng, n, 3.0);
        SumProductOptions opt;
        opt.max_iters = 2 * n + 2;
        opt.early_stop = false;
        const LlrSequence bp = sum_product_decode(code, s, prior, opt).posterior;
        const LlrSequence exact = oracles::exact_marginals(code, s, prior);
        for (std::size_t j = 0; j < n; ++j) CHECK(bp[j] == doctest::Approx(exact[j]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("property: a reported success satisfies the syndrome")
{
    Rng rng(4);
    for (int t = 0; t < 30; ++t) {
        const LdpcCode code(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, 200, 90, rng()));
        const BitSequence u = bernoulli_bits(rng, 200, 0.5);
        const BitSequence noise = bernoulli_bits(rng, 200, 0.05);
        const LlrSequence prior = side_info_prior(u ^ noise, 0.05);
        const auto r = sum_product_decode(code, code.syndrome(u), prior);
        CHECK(r.syndrome_satisfied == (code.syndrome(r.u_hat) == code.syndrome(u)));
        CHECK(r.iterations_used >= 1);
        CHECK(r.iterations_used <= 100);
    }
}

TEST_CASE("messages stay inside the clamp")
{
    const LdpcCode code(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, 300, 150, 6));
    Rng rng(5);
    const BitSequence u = bernoulli_bits(rng, 300, 0.5);
    double largest = 0.0;
    std::size_t calls = 0;
    SumProductOptions opt;
    opt.max_iters = 20;
    opt.early_stop = false;
    opt.observer = [&](std::span<const double> c2v, std::span<const double> v2c) {
        ++calls;
        for (double m : c2v) largest = std::max(largest, std::abs(m));
        for (double m : v2c) largest = std::max(largest, std::abs(m));
    };
    sum_product_decode(code, code.syndrome(u), prior_toward(u, 29.0), opt);
    CHECK(calls == 20);
    CHECK(largest <= llr_clamp_bound);
    CHECK(largest > 20.0);
}

TEST_CASE("coupling vanishes at q = 1/2")
{
    Rng rng(6);
    const LdpcCode c1(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, 300, 160, 7));
    const LdpcCode c2(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, 300, 160, 8));
    const BitSequence u1 = bernoulli_bits(rng, 300, 0.5);
    const BitSequence u2 = bernoulli_bits(rng, 300, 0.5);
    const LlrSequence b1 = side_info_prior(u1 ^ bernoulli_bits(rng, 300, 0.08), 0.08);
    const LlrSequence b2 = side_info_prior(u2 ^ bernoulli_bits(rng, 300, 0.08), 0.08);
    JointOptions jo;
    jo.local_iters = 10;
    jo.global_iters = 4;
    const auto joint = joint_sum_product_decode(c1, c2, c1.syndrome(u1), c2.syndrome(u2), 0.5, jo, b1, b2);
    SumProductOptions so;
    so.max_iters = 40;
    CHECK(joint.link1.u_hat == sum_product_decode(c1, c1.syndrome(u1), b1, so).u_hat);
    CHECK(joint.link2.u_hat == sum_product_decode(c2, c2.syndrome(u2), b2, so).u_hat);
}

TEST_CASE("coupling helps when the two words are strongly correlated")
{
    // Link 1's syndrome alone leaves u1 ambiguous; link 2 reveals all but one
    // bit of u2, and u2 is a noisy copy of u1.
    double ber_coupled = 0.0;
    double ber_alone = 0.0;
    const int seeds = 12;
    const std::size_t n = 400;
    std::vector<std::vector<std::uint32_t>> singles;
    for (std::uint32_t j = 0; j + 1 < n; ++j) singles.push_back({j});
    const LdpcCode c2(SparseBipartiteGraph(n, singles));
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(90, "coupling", static_cast<std::uint64_t>(s)));
        const double q = 0.02;
        const BitSequence u1 = bernoulli_bits(rng, n, 0.5);
        const BitSequence u2 = u1 ^ bernoulli_bits(rng, n, q);
        const LdpcCode c1(sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, n, 160, rng()));
        const auto joint = joint_sum_product_decode(c1, c2, c1.syndrome(u1), c2.syndrome(u2), q);
        ber_coupled += hamming_rate(joint.link1.u_hat, u1) / seeds;
        CHECK(hamming_distance(joint.link2.u_hat, u2) <= 1);
        const auto alone = sum_product_decode(c1, c1.syndrome(u1), LlrSequence(n, 0.0));
        ber_alone += hamming_rate(alone.u_hat, u1) / seeds;
    }
    CHECK(ber_coupled < ber_alone);
    CHECK(ber_coupled < 0.02);
}

TEST_CASE("soft reconstruction")
{
    const ChainParams params(0.1, 0.15, 0.15, 0.1);
    const BitSequence a{0, 0, 1, 1};
    const BitSequence b{0, 1, 0, 1};
    const auto rec = reconstruct_soft(a, b, params);
    REQUIRE(rec.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(rec[j].prob_of_one.value() == chain_posterior(params, a[j], b[j]).prob_of_one.value());
    }
    CHECK(rec[3].prob_of_one.value() == doctest::Approx(0.926309).epsilon(1e-6));
    const auto succ = reconstruct_soft_successive(a, b, params);
    for (std::size_t j = 0; j < 4; ++j) CHECK(succ[j].prob_of_one.value() == rec[j].prob_of_one.value());
    CHECK_THROWS_AS(reconstruct_soft(a, BitSequence{1}, params), dimension_error);
    CHECK(chain_crossover(params).value() == doctest::Approx(0.3432));
}
