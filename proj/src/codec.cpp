#include "binceo/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "binceo/error.hpp"
#include "binceo/llr.hpp"
#include "binceo/rng.hpp"

namespace binceo {

namespace {

// LLR of a BSC observation at crossover q, clamped.
double observation_llr(double q)
{
    if (q <= 0.0) return llr_clamp_bound;
    return clamp_llr(std::log((1.0 - q) / q));
}

class LdgmDecimator {
public:
    LdgmDecimator(const LdgmCode& code, const BitSequence& y, double beta, const QuantizerOptions& options)
        : graph_(code.graph()), options_(options), channel_tanh_(code.n()), w2g_(graph_.n_edges(), 0.0),
          g2w_(graph_.n_edges(), 0.0), bias_(code.k(), 0.0), fixed_(code.k(), -1)
    {
        for (std::size_t j = 0; j < code.n(); ++j) channel_tanh_[j] = std::tanh(0.5 * (y[j] ? -beta : beta));
    }

    // One flooding round; returns the largest change of a factor-to-bit message.
    double round()
    {
        double change = 0.0;
        for (std::size_t f = 0; f < graph_.n_fac(); ++f) {
            const std::size_t begin = graph_.factor_begin(f);
            const std::size_t deg = graph_.factor_degree(f);
            t_.resize(deg);
            prefix_.resize(deg);
            for (std::size_t i = 0; i < deg; ++i) t_[i] = std::tanh(0.5 * w2g_[begin + i]);
            // leave-one-out products by prefix/suffix sweeps
            double prefix = channel_tanh_[f];
            for (std::size_t i = 0; i < deg; ++i) {
                prefix_[i] = prefix;
                prefix *= t_[i];
            }
            double suffix = 1.0;
            for (std::size_t i = deg; i-- > 0;) {
                const double others = prefix_[i] * suffix;
                suffix *= t_[i];
                double msg = clamp_llr(2.0 * std::atanh(std::clamp(others, -1.0, 1.0)));
                if (options_.damping > 0.0) msg = (1.0 - options_.damping) * msg + options_.damping * g2w_[begin + i];
                change = std::max(change, std::abs(msg - g2w_[begin + i]));
                g2w_[begin + i] = msg;
            }
        }
        update_bits();
        return change;
    }

    void update_bits()
    {
        for (std::size_t v = 0; v < graph_.n_var(); ++v) {
            double total = 0.0;
            for (auto e : graph_.var_edges(v)) total += g2w_[e];
            bias_[v] = total;
            if (fixed_[v] >= 0) {
                const double pinned = fixed_[v] ? -llr_clamp_bound : llr_clamp_bound;
                for (auto e : graph_.var_edges(v)) w2g_[e] = pinned;
            } else {
                for (auto e : graph_.var_edges(v)) w2g_[e] = clamp_llr(total - g2w_[e]);
            }
        }
    }

    void fix(std::size_t v, int value)
    {
        fixed_[v] = value;
        const double pinned = value ? -llr_clamp_bound : llr_clamp_bound;
        for (auto e : graph_.var_edges(v)) w2g_[e] = pinned;
    }

    const std::vector<double>& bias() const noexcept { return bias_; }
    const std::vector<int>& fixed() const noexcept { return fixed_; }

private:
    const SparseBipartiteGraph& graph_;
    const QuantizerOptions& options_;
    std::vector<double> channel_tanh_;
    std::vector<double> w2g_;
    std::vector<double> g2w_;
    std::vector<double> bias_;
    std::vector<int> fixed_;
    std::vector<double> t_;
    std::vector<double> prefix_;
};

} // namespace

QuantizationResult bias_propagation_quantize(const LdgmCode& code, const BitSequence& y, Prob target_d,
                                             std::uint64_t seed, const QuantizerOptions& options)
{
    require_same_length(y.size(), code.n(), "bias_propagation_quantize");
    require_crossover(target_d, "target_d");
    if (options.max_iters < 1) throw domain_error("bias_propagation_quantize: max_iters must be >= 1");
    if (!(options.decimation_fraction > 0.0 && options.decimation_fraction <= 1.0)) {
        throw domain_error("bias_propagation_quantize: decimation_fraction must lie in (0, 1]");
    }

    Rng rng(seed);
    const std::size_t k = code.k();
    LdgmDecimator bp(code, y, observation_llr(target_d), options);
    const auto batch = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(options.decimation_fraction * static_cast<double>(k))));

    QuantizationResult result;
    result.converged = true;
    std::vector<std::uint32_t> undecided(k);
    std::iota(undecided.begin(), undecided.end(), 0u);

    while (!undecided.empty()) {
        bool settled = false;
        for (std::size_t it = 0; it < options.max_iters; ++it) {
            ++result.message_rounds;
            if (bp.round() < options.convergence_tolerance) {
                settled = true;
                break;
            }
        }
        result.converged = result.converged && settled;

        const auto& bias = bp.bias();
        const std::size_t take = std::min(batch, undecided.size());
        // most biased first, lowest index on ties
        std::partial_sort(undecided.begin(), undecided.begin() + static_cast<std::ptrdiff_t>(take), undecided.end(),
                          [&](std::uint32_t a, std::uint32_t b) {
                              const double ba = std::abs(bias[a]);
                              const double bb = std::abs(bias[b]);
                              return ba != bb ? ba > bb : a < b;
                          });
        if (std::abs(bias[undecided.front()]) < options.min_bias) {
            const auto pick = static_cast<std::size_t>(uniform_below(rng, undecided.size()));
            std::swap(undecided[pick], undecided.back());
            bp.fix(undecided.back(), static_cast<int>(rng() & 1u));
            undecided.pop_back();
            continue;
        }
        std::size_t fixed_now = 0;
        for (; fixed_now < take; ++fixed_now) {
            const auto v = undecided[fixed_now];
            if (std::abs(bias[v]) < options.min_bias) break;
            bp.fix(v, bias[v] < 0.0 ? 1 : 0);
        }
        undecided.erase(undecided.begin(), undecided.begin() + static_cast<std::ptrdiff_t>(fixed_now));
        std::sort(undecided.begin(), undecided.end());
    }

    result.info_bits = BitSequence(k);
    for (std::size_t v = 0; v < k; ++v) result.info_bits.set(v, bp.fixed()[v]);
    result.quantized = code.encode(result.info_bits);
    result.empirical_distortion = hamming_rate(result.quantized, y);
    return result;
}

BitSequence syndrome_generate(const LdpcCode& code, const BitSequence& u)
{
    return code.syndrome(u);
}

JointEncoding encode_joint(const CompoundCode& cc1, const CompoundCode& cc2, const BitSequence& y1,
                           const BitSequence& y2, const TestChannelPair& targets, std::uint64_t seed,
                           const QuantizerOptions& options)
{
    require_same_length(y1.size(), cc1.n(), "encode_joint link 1");
    require_same_length(y2.size(), cc2.n(), "encode_joint link 2");
    JointEncoding out;
    out.quant1 = bias_propagation_quantize(cc1.ldgm, y1, targets.d1, derive_seed(seed, "quantize", 1), options);
    out.quant2 = bias_propagation_quantize(cc2.ldgm, y2, targets.d2, derive_seed(seed, "quantize", 2), options);
    out.link1.syndrome = syndrome_generate(cc1.ldpc, out.quant1.quantized);
    out.link2.syndrome = syndrome_generate(cc2.ldpc, out.quant2.quantized);
    return out;
}

SuccessiveEncoding encode_successive(const CompoundCode& cc1, const LdgmCode& ldgm2, const BitSequence& y1,
                                     const BitSequence& y2, const TestChannelPair& targets, std::uint64_t seed,
                                     const QuantizerOptions& options)
{
    require_same_length(y1.size(), cc1.n(), "encode_successive link 1");
    require_same_length(y2.size(), ldgm2.n(), "encode_successive link 2");
    SuccessiveEncoding out;
    out.quant1 = bias_propagation_quantize(cc1.ldgm, y1, targets.d1, derive_seed(seed, "quantize", 1), options);
    out.quant2 = bias_propagation_quantize(ldgm2, y2, targets.d2, derive_seed(seed, "quantize", 2), options);
    out.links.syndrome1 = syndrome_generate(cc1.ldpc, out.quant1.quantized);
    out.links.info_bits2 = out.quant2.info_bits;
    return out;
}

} // namespace binceo
