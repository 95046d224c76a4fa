#pragma once

// Scalar information-theoretic kernels for binary sources: entropy, BSC
// cascades, posteriors along the U1 - Y1 - X - Y2 - U2 chain, and log-loss.
// All quantities are in bits except LLRs, which use natural logarithms.

#include <span>
#include <vector>

#include "binceo/bits.hpp"

namespace binceo {

// Probability in [0, 1]. Constructing from an out-of-range double throws
// domain_error, so functions taking Prob validate their arguments at the call.
class Prob {
public:
    constexpr Prob() = default;
    Prob(double value); // NOLINT(google-explicit-constructor): checked conversion

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; } // NOLINT

private:
    double value_ = 0.0;
};

// Crossover probabilities of the four BSCs in U1 -d1- Y1 -p1- X -p2- Y2 -d2- U2.
// Canonical form only: each value must lie in [0, 0.5].
struct ChainParams {
    Prob d1;
    Prob p1;
    Prob p2;
    Prob d2;

    ChainParams() = default;
    ChainParams(Prob d1_, Prob p1_, Prob p2_, Prob d2_);
};

// Soft reconstruction of a binary symbol, stored as Pr{symbol = 1}.
struct SoftSymbol {
    Prob prob_of_one;

    constexpr double prob_of(int bit) const noexcept
    {
        return bit ? prob_of_one.value() : 1.0 - prob_of_one.value();
    }
};

inline constexpr double default_log_loss_floor = 1e-12;

// Throws domain_error unless 0 <= q <= 0.5.
void require_crossover(double q, const char* name);

// h_b(q) = -q log2 q - (1-q) log2 (1-q), with 0 log 0 = 0.
double binary_entropy(Prob q);

// Crossover of two cascaded BSCs: a(1-b) + b(1-a).
Prob binary_convolution(Prob a, Prob b);

// Pr{X = 1 | U1 = u1, U2 = u2} under a uniform prior on X.
SoftSymbol chain_posterior(const ChainParams& params, int u1, int u2);

// log2(1 / q) with q the mass the reconstruction puts on x, floored at `floor`.
double log_loss(SoftSymbol recon, int x, double floor = default_log_loss_floor);

double average_log_loss(std::span<const SoftSymbol> recons, const BitSequence& source,
                        double floor = default_log_loss_floor);

} // namespace binceo
