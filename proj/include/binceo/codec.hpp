#pragma once

// Encoder side: LDGM quantization by message passing with decimation, LDPC
// syndrome formation, and the two per-scheme encoder pipelines.

#include <cstdint>

#include "binceo/bits.hpp"
#include "binceo/bounds.hpp"
#include "binceo/graphs.hpp"

namespace binceo {

struct QuantizationResult {
    BitSequence info_bits; // length k
    BitSequence quantized; // length n, equals ldgm.encode(info_bits)
    double empirical_distortion = 0.0;
    bool converged = false;
    std::size_t message_rounds = 0;
};

struct QuantizerOptions {
    // message-passing rounds allowed between two decimation steps
    std::size_t max_iters = 25;
    // fraction of the still-undecided information bits hard-fixed per step
    double decimation_fraction = 0.01;
    // a round whose largest message change stays below this ends the batch early
    double convergence_tolerance = 1e-3;
    // below this bias an undecided bit is fixed at random
    double min_bias = 1e-9;
    // message damping: new = (1 - damping) * update + damping * old
    double damping = 0.0;
};

// Quantizes y to an LDGM codeword. Messages are LLRs with y treated as a BSC
// observation of the codeword at crossover target_d; between decimation steps
// up to max_iters flooding rounds run, then the most biased undecided bits
// (ties to the lowest index) are fixed to their preferred value.
QuantizationResult bias_propagation_quantize(const LdgmCode& code, const BitSequence& y, Prob target_d,
                                             std::uint64_t seed, const QuantizerOptions& options = {});

BitSequence syndrome_generate(const LdpcCode& code, const BitSequence& u);

struct EncodedLinkJoint {
    BitSequence syndrome;
};

struct JointEncoding {
    EncodedLinkJoint link1;
    EncodedLinkJoint link2;
    QuantizationResult quant1;
    QuantizationResult quant2;
};

// Joint pipeline: quantize each observation with its LDGM, then send the
// LDPC syndrome of each quantized word.
JointEncoding encode_joint(const CompoundCode& cc1, const CompoundCode& cc2, const BitSequence& y1,
                           const BitSequence& y2, const TestChannelPair& targets, std::uint64_t seed,
                           const QuantizerOptions& options = {});

struct EncodedLinksSuccessive {
    BitSequence syndrome1;  // length m1
    BitSequence info_bits2; // length k2
};

struct SuccessiveEncoding {
    EncodedLinksSuccessive links;
    QuantizationResult quant1;
    QuantizationResult quant2;
};

// Successive pipeline: link 1 is a compound code, link 2 an LDGM quantizer whose
// information bits are sent as-is.
SuccessiveEncoding encode_successive(const CompoundCode& cc1, const LdgmCode& ldgm2, const BitSequence& y1,
                                     const BitSequence& y2, const TestChannelPair& targets, std::uint64_t seed,
                                     const QuantizerOptions& options = {});

} // namespace binceo
