#pragma once

// Receiver side: syndrome-based sum-product decoding (with and without the
// LDGM layer of a compound code), the coupled two-decoder joint variant, and
// soft reconstruction of the remote source.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "binceo/binmath.hpp"
#include "binceo/bits.hpp"
#include "binceo/graphs.hpp"
#include "binceo/llr.hpp"

namespace binceo {

struct DecodeResult {
    BitSequence u_hat;
    bool syndrome_satisfied = false;
    std::size_t iterations_used = 0;
    LlrSequence posterior;
};

// Called once per flooding iteration with every edge message of that
// iteration (check-to-variable first, then variable-to-check).
using MessageObserver = std::function<void(std::span<const double> c2v, std::span<const double> v2c)>;

struct SumProductOptions {
    std::size_t max_iters = 100;
    bool early_stop = true;
    MessageObserver observer;
};

// Flooding sum-product on the LDPC graph. Check i enforces parity s_i on its
// variables; stops once the hard decision reproduces the syndrome (when
// early_stop is set). Non-convergence is reported, not thrown.
DecodeResult sum_product_decode(const LdpcCode& code, const BitSequence& syndrome, const LlrSequence& prior,
                                const SumProductOptions& options = {});

// Per-symbol LLR (1 - 2 u2_j) log((1 - q) / q); q = 0 saturates at the clamp.
LlrSequence side_info_prior(const BitSequence& u2, Prob q);

// out = 2 atanh(tanh(in / 2) (1 - 2q)): belief seen through a BSC(q).
double soften_llr(double llr, double q);

struct JointOptions {
    std::size_t local_iters = 40;
    std::size_t global_iters = 15;
    MessageObserver observer;
};

struct JointDecodeResult {
    DecodeResult link1;
    DecodeResult link2;
    std::size_t global_iterations_used = 0;
};

// Two sum-product decoders coupled through a BSC(q) correlation channel.
// Each global iteration converts each decoder's extrinsic beliefs (posterior
// minus the cross prior it received) into a prior for the other, then runs
// local_iters rounds on each; a decoder whose syndrome holds under an
// unchanged prior is left as is. base priors default to all-zero.
JointDecodeResult joint_sum_product_decode(const LdpcCode& code1, const LdpcCode& code2, const BitSequence& s1,
                                           const BitSequence& s2, Prob q, const JointOptions& options = {},
                                           const LlrSequence& base_prior1 = {},
                                           const LlrSequence& base_prior2 = {});

// Compound-code decoding: the codeword is known to be u = G w for the LDGM
// generator G, so beliefs flow through both graphs. u_hat is G w_hat, and
// syndrome_satisfied means H u_hat equals the syndrome.
DecodeResult compound_decode(const CompoundCode& code, const BitSequence& syndrome, const LlrSequence& prior,
                             const SumProductOptions& options = {});

JointDecodeResult compound_joint_decode(const CompoundCode& code1, const CompoundCode& code2, const BitSequence& s1,
                                        const BitSequence& s2, Prob q, const JointOptions& options = {},
                                        const LlrSequence& base_prior1 = {}, const LlrSequence& base_prior2 = {});

// Soft reconstructions of x: chain_posterior applied symbol-wise.
std::vector<SoftSymbol> reconstruct_soft(const BitSequence& u1_hat, const BitSequence& u2_hat,
                                         const ChainParams& params);
std::vector<SoftSymbol> reconstruct_soft_successive(const BitSequence& u1_hat, const BitSequence& u2,
                                                    const ChainParams& params);

// End-to-end U1 <-> U2 crossover d1 * p1 * p2 * d2.
Prob chain_crossover(const ChainParams& params);

} // namespace binceo
