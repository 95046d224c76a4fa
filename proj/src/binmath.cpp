#include "binceo/binmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binceo/error.hpp"
#include "binceo/simd/kernels.hpp"

namespace binceo {

Prob::Prob(double value) : value_(value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw domain_error("probability out of [0, 1]: " + std::to_string(value));
    }
}

void require_crossover(double q, const char* name)
{
    if (!(q >= 0.0 && q <= 0.5)) {
        throw domain_error(std::string(name) + " must lie in [0, 0.5], got " + std::to_string(q));
    }
}

ChainParams::ChainParams(Prob d1_, Prob p1_, Prob p2_, Prob d2_) : d1(d1_), p1(p1_), p2(p2_), d2(d2_)
{
    require_crossover(d1, "d1");
    require_crossover(p1, "p1");
    require_crossover(p2, "p2");
    require_crossover(d2, "d2");
}

double binary_entropy(Prob q)
{
    const double x = q.value();
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

Prob binary_convolution(Prob a, Prob b)
{
    const double x = a.value();
    const double y = b.value();
    // exact in [0, 1] up to rounding; clamp guards the last ulp
    return std::clamp(x * (1.0 - y) + y * (1.0 - x), 0.0, 1.0);
}

SoftSymbol chain_posterior(const ChainParams& params, int u1, int u2)
{
    const double a = binary_convolution(params.p1, params.d1);
    const double b = binary_convolution(params.p2, params.d2);
    // likelihoods of (u1, u2) given X = 1 and X = 0
    const double like1 = (u1 ? 1.0 - a : a) * (u2 ? 1.0 - b : b);
    const double like0 = (u1 ? a : 1.0 - a) * (u2 ? b : 1.0 - b);
    const double total = like1 + like0;
    if (total <= 0.0) return SoftSymbol{0.5};
    return SoftSymbol{std::clamp(like1 / total, 0.0, 1.0)};
}

double log_loss(SoftSymbol recon, int x, double floor)
{
    const double q = std::clamp(recon.prob_of(x), floor, 1.0);
    return 0.0 - std::log2(q); // +0.0 for a perfect reconstruction
}

double average_log_loss(std::span<const SoftSymbol> recons, const BitSequence& source, double floor)
{
    require_same_length(recons.size(), source.size(), "average_log_loss");
    if (recons.empty()) throw dimension_error("average_log_loss: empty input");
    std::vector<double> losses(recons.size());
    for (std::size_t j = 0; j < recons.size(); ++j) losses[j] = log_loss(recons[j], source[j], floor);
    return simd::active().blocked_sum(losses.data(), losses.size()) / static_cast<double>(losses.size());
}

} // namespace binceo
