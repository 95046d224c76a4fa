#include "doctest.h"

#include <cmath>
#include <vector>

#include "binceo/binmath.hpp"
#include "binceo/error.hpp"
#include "support.hpp"

using namespace binceo;

TEST_CASE("binary entropy reference values")
{
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.499915958164528).epsilon(1e-12));
    CHECK(1.0 - binary_entropy(0.11) == doctest::Approx(0.500084041835472).epsilon(1e-12));
}

TEST_CASE("binary convolution")
{
    CHECK(binary_convolution(0.15, 0.15).value() == doctest::Approx(0.255).epsilon(1e-15));
    CHECK(binary_convolution(0.0, 0.3).value() == doctest::Approx(0.3));
    CHECK(binary_convolution(0.5, 0.2).value() == doctest::Approx(0.5));
}

TEST_CASE("probability validation")
{
    CHECK_THROWS_AS(Prob(-0.01), domain_error);
    CHECK_THROWS_AS(Prob(1.01), domain_error);
    CHECK_THROWS_AS(Prob(std::nan("")), domain_error);
    CHECK_THROWS_AS(ChainParams(0.1, 0.6, 0.1, 0.1), domain_error);
    CHECK_NOTHROW(ChainParams(0.0, 0.5, 0.5, 0.0));
}

TEST_CASE("chain posterior")
{
    const ChainParams params(0.1, 0.15, 0.15, 0.1);
    // p1*d1 = 0.22; (0.78^2) / (0.78^2 + 0.22^2)
    CHECK(chain_posterior(params, 1, 1).prob_of_one.value() == doctest::Approx(0.926309).epsilon(1e-6));
    CHECK(chain_posterior(params, 0, 0).prob_of_one.value() == doctest::Approx(1.0 - 0.926309).epsilon(1e-5));
    CHECK(chain_posterior(params, 0, 1).prob_of_one.value() == doctest::Approx(0.5));

    const ChainParams noiseless(0.0, 0.0, 0.0, 0.0);
    CHECK(chain_posterior(noiseless, 1, 1).prob_of_one.value() == 1.0);
    CHECK(chain_posterior(noiseless, 0, 0).prob_of_one.value() == 0.0);
}

TEST_CASE("log-loss")
{
    CHECK(log_loss(SoftSymbol{0.5}, 1) == doctest::Approx(1.0));
    CHECK(log_loss(SoftSymbol{1.0}, 1) == 0.0);
    CHECK_FALSE(std::signbit(log_loss(SoftSymbol{1.0}, 1)));
    // the floor keeps a confident miss finite
    CHECK(log_loss(SoftSymbol{1.0}, 0) == doctest::Approx(-std::log2(1e-12)));
    CHECK(log_loss(SoftSymbol{0.25}, 0) == doctest::Approx(std::log2(4.0 / 3.0)));

    const BitSequence x{0, 1, 1, 0, 1};
    std::vector<SoftSymbol> flat(x.size(), SoftSymbol{0.5});
    CHECK(average_log_loss(flat, x) == doctest::Approx(1.0));
    CHECK_THROWS_AS(average_log_loss(std::vector<SoftSymbol>(3, SoftSymbol{0.5}), x), dimension_error);
    CHECK_THROWS_AS(average_log_loss(std::vector<SoftSymbol>{}, BitSequence{}), dimension_error);
}

TEST_CASE("property: entropy and convolution identities")
{
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const double a = testing::uniform(rng, 0.0, 1.0);
        const double b = testing::uniform(rng, 0.0, 1.0);
        const double c = testing::uniform(rng, 0.0, 1.0);
        CHECK(binary_entropy(a) == doctest::Approx(binary_entropy(1.0 - a)).epsilon(1e-12));
        CHECK(binary_entropy(a) >= 0.0);
        CHECK(binary_entropy(a) <= 1.0 + 1e-15);
        CHECK(binary_convolution(a, b).value() == doctest::Approx(binary_convolution(b, a).value()).epsilon(1e-15));
        const double left = binary_convolution(binary_convolution(a, b), c);
        const double right = binary_convolution(a, binary_convolution(b, c));
        CHECK(left == doctest::Approx(right).epsilon(1e-12));
        // cascading noisy channels never lowers the crossover below either one when both are <= 0.5
        const double x = 0.5 * a;
        const double y = 0.5 * b;
        CHECK(binary_convolution(x, y).value() >= std::max(x, y) - 1e-15);
    }
}

TEST_CASE("property: posterior is a proper distribution and symmetric")
{
    Rng rng(12);
    for (int i = 0; i < 300; ++i) {
        const ChainParams p(testing::uniform(rng, 0, 0.5), testing::uniform(rng, 0, 0.5), testing::uniform(rng, 0, 0.5),
                            testing::uniform(rng, 0, 0.5));
        for (int u1 = 0; u1 < 2; ++u1) {
            for (int u2 = 0; u2 < 2; ++u2) {
                const double one = chain_posterior(p, u1, u2).prob_of_one.value();
                const double flipped = chain_posterior(p, 1 - u1, 1 - u2).prob_of_one.value();
                CHECK(one >= 0.0);
                CHECK(one <= 1.0);
                CHECK(one == doctest::Approx(1.0 - flipped).epsilon(1e-12));
            }
        }
    }
}
