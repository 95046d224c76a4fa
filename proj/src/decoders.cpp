#include "binceo/decoders.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "binceo/error.hpp"
#include "binceo/simd/kernels.hpp"

namespace binceo {

namespace {

// out[i] = clamp(2 atanh(gain * prod_{j != i} t[j])); t holds tanh(in / 2).
void leave_one_out(std::span<const double> t, double gain, std::span<double> out, std::vector<double>& scratch)
{
    const std::size_t deg = t.size();
    scratch.resize(deg);
    double prefix = gain;
    for (std::size_t i = 0; i < deg; ++i) {
        scratch[i] = prefix;
        prefix *= t[i];
    }
    double suffix = 1.0;
    for (std::size_t i = deg; i-- > 0;) {
        const double others = std::clamp(scratch[i] * suffix, -1.0, 1.0);
        out[i] = clamp_llr(2.0 * std::atanh(others));
        suffix *= t[i];
    }
}

// Plain syndrome decoder on the LDPC Tanner graph.
class LdpcEngine {
public:
    LdpcEngine(const LdpcCode& code, const BitSequence& syndrome)
        : graph_(code.graph()), syndrome_(syndrome), prior_(code.n(), 0.0), c2v_(graph_.n_edges(), 0.0),
          v2c_(graph_.n_edges(), 0.0), posterior_(code.n(), 0.0), hard_(code.n())
    {
        require_same_length(syndrome.size(), code.m(), "syndrome");
    }

    std::size_t n() const noexcept { return prior_.size(); }

    // Installs a new prior and refreshes variable-to-check messages.
    void set_prior(const LlrSequence& prior)
    {
        require_same_length(prior.size(), n(), "prior");
        prior_ = prior;
        update_variables();
    }

    void iterate()
    {
        std::vector<double> t;
        std::vector<double> out;
        for (std::size_t f = 0; f < graph_.n_fac(); ++f) {
            const std::size_t begin = graph_.factor_begin(f);
            const std::size_t deg = graph_.factor_degree(f);
            t.resize(deg);
            out.resize(deg);
            for (std::size_t i = 0; i < deg; ++i) t[i] = std::tanh(0.5 * v2c_[begin + i]);
            leave_one_out(t, syndrome_[f] ? -1.0 : 1.0, out, scratch_);
            std::copy(out.begin(), out.end(), c2v_.begin() + static_cast<std::ptrdiff_t>(begin));
        }
        update_variables();
    }

    bool satisfied() const { return graph_.parity(hard_) == syndrome_; }

    const LlrSequence& posterior() const noexcept { return posterior_; }
    const BitSequence& hard() const noexcept { return hard_; }
    std::span<const double> c2v() const noexcept { return c2v_; }
    std::span<const double> v2c() const noexcept { return v2c_; }

    // posterior minus the given prior component
    LlrSequence extrinsic(const LlrSequence& excluded) const
    {
        LlrSequence out(n());
        for (std::size_t v = 0; v < n(); ++v) out[v] = posterior_[v] - excluded[v];
        return out;
    }

private:
    void update_variables()
    {
        for (std::size_t v = 0; v < n(); ++v) {
            double total = prior_[v];
            for (auto e : graph_.var_edges(v)) total += c2v_[e];
            posterior_[v] = clamp_llr(total);
            for (auto e : graph_.var_edges(v)) v2c_[e] = clamp_llr(total - c2v_[e]);
        }
        simd::active().hard_decision(posterior_.data(), hard_.data(), n());
    }

    const SparseBipartiteGraph& graph_;
    const BitSequence& syndrome_;
    LlrSequence prior_;
    std::vector<double> c2v_;
    std::vector<double> v2c_;
    LlrSequence posterior_;
    BitSequence hard_;
    std::vector<double> scratch_;
};

// Decoder over the compound graph: information bits w, codeword bits u with
// u_j = xor of the w adjacent to LDGM factor j, checks sum of u over each
// LDPC factor = syndrome.
class CompoundEngine {
public:
    CompoundEngine(const CompoundCode& code, const BitSequence& syndrome)
        : ldgm_(code.ldgm.graph()), ldpc_(code.ldpc.graph()), generator_(code.ldgm), syndrome_(syndrome),
          prior_(code.n(), 0.0), h2u_(ldpc_.n_edges(), 0.0), u2h_(ldpc_.n_edges(), 0.0),
          g2w_(ldgm_.n_edges(), 0.0), w2g_(ldgm_.n_edges(), 0.0), g2u_(code.n(), 0.0), u2g_(code.n(), 0.0),
          posterior_(code.n(), 0.0), w_belief_(code.ldgm.k(), 0.0), w_hard_(code.ldgm.k()), hard_(code.n())
    {
        require_same_length(syndrome.size(), code.ldpc.m(), "syndrome");
        require_same_length(code.ldgm.n(), code.ldpc.n(), "compound block length");
    }

    std::size_t n() const noexcept { return prior_.size(); }

    void set_prior(const LlrSequence& prior)
    {
        require_same_length(prior.size(), n(), "prior");
        prior_ = prior;
        update_codeword_bits();
    }

    void iterate()
    {
        std::vector<double> t;
        std::vector<double> out;
        // LDPC checks
        for (std::size_t f = 0; f < ldpc_.n_fac(); ++f) {
            const std::size_t begin = ldpc_.factor_begin(f);
            const std::size_t deg = ldpc_.factor_degree(f);
            t.resize(deg);
            out.resize(deg);
            for (std::size_t i = 0; i < deg; ++i) t[i] = std::tanh(0.5 * u2h_[begin + i]);
            leave_one_out(t, syndrome_[f] ? -1.0 : 1.0, out, scratch_);
            std::copy(out.begin(), out.end(), h2u_.begin() + static_cast<std::ptrdiff_t>(begin));
        }
        // LDGM factors: inputs are u_j (slot 0) and its information bits
        for (std::size_t j = 0; j < ldgm_.n_fac(); ++j) {
            const std::size_t begin = ldgm_.factor_begin(j);
            const std::size_t deg = ldgm_.factor_degree(j);
            t.resize(deg + 1);
            out.resize(deg + 1);
            t[0] = std::tanh(0.5 * u2g_[j]);
            for (std::size_t i = 0; i < deg; ++i) t[i + 1] = std::tanh(0.5 * w2g_[begin + i]);
            leave_one_out(t, 1.0, out, scratch_);
            g2u_[j] = out[0];
            std::copy(out.begin() + 1, out.end(), g2w_.begin() + static_cast<std::ptrdiff_t>(begin));
        }
        // information bits
        for (std::size_t v = 0; v < ldgm_.n_var(); ++v) {
            double total = 0.0;
            for (auto e : ldgm_.var_edges(v)) total += g2w_[e];
            w_belief_[v] = clamp_llr(total);
            for (auto e : ldgm_.var_edges(v)) w2g_[e] = clamp_llr(total - g2w_[e]);
        }
        update_codeword_bits();
    }

    bool satisfied() const { return ldpc_.parity(hard_) == syndrome_; }

    const LlrSequence& posterior() const noexcept { return posterior_; }
    const BitSequence& hard() const noexcept { return hard_; }
    std::span<const double> c2v() const noexcept { return h2u_; }
    std::span<const double> v2c() const noexcept { return u2h_; }

    LlrSequence extrinsic(const LlrSequence& excluded) const
    {
        LlrSequence out(n());
        for (std::size_t v = 0; v < n(); ++v) out[v] = posterior_[v] - excluded[v];
        return out;
    }

private:
    void update_codeword_bits()
    {
        for (std::size_t j = 0; j < n(); ++j) {
            double checks = 0.0;
            for (auto e : ldpc_.var_edges(j)) checks += h2u_[e];
            const double total = prior_[j] + g2u_[j] + checks;
            posterior_[j] = clamp_llr(total);
            u2g_[j] = clamp_llr(prior_[j] + checks);
            for (auto e : ldpc_.var_edges(j)) u2h_[e] = clamp_llr(total - h2u_[e]);
        }
        simd::active().hard_decision(w_belief_.data(), w_hard_.data(), w_belief_.size());
        hard_ = generator_.encode(w_hard_);
    }

    const SparseBipartiteGraph& ldgm_;
    const SparseBipartiteGraph& ldpc_;
    const LdgmCode& generator_;
    const BitSequence& syndrome_;
    LlrSequence prior_;
    std::vector<double> h2u_;
    std::vector<double> u2h_;
    std::vector<double> g2w_;
    std::vector<double> w2g_;
    std::vector<double> g2u_;
    std::vector<double> u2g_;
    LlrSequence posterior_;
    std::vector<double> w_belief_;
    BitSequence w_hard_;
    BitSequence hard_;
    std::vector<double> scratch_;
};

template <class Engine>
DecodeResult snapshot(const Engine& engine, std::size_t iterations, bool satisfied)
{
    DecodeResult r;
    r.u_hat = engine.hard();
    r.posterior = engine.posterior();
    r.iterations_used = iterations;
    r.syndrome_satisfied = satisfied;
    return r;
}

// Runs up to `budget` iterations; returns (iterations run, satisfied).
template <class Engine>
std::pair<std::size_t, bool> run(Engine& engine, std::size_t budget, bool early_stop, const MessageObserver& observer)
{
    for (std::size_t it = 0; it < budget; ++it) {
        engine.iterate();
        if (observer) observer(engine.c2v(), engine.v2c());
        if (early_stop && engine.satisfied()) return {it + 1, true};
    }
    return {budget, engine.satisfied()};
}

template <class Engine>
DecodeResult single_decode(Engine engine, const LlrSequence& prior, const SumProductOptions& options)
{
    if (options.max_iters < 1) throw domain_error("max_iters must be >= 1");
    engine.set_prior(prior);
    const auto [iters, ok] = run(engine, options.max_iters, options.early_stop, options.observer);
    return snapshot(engine, iters, ok);
}

template <class Engine>
JointDecodeResult coupled_decode(Engine e1, Engine e2, Prob q, const JointOptions& options, LlrSequence base1,
                                 LlrSequence base2)
{
    if (options.local_iters < 1 || options.global_iters < 1) throw domain_error("iteration budgets must be >= 1");
    const std::size_t n = e1.n();
    require_same_length(e2.n(), n, "joint decode block length");
    if (base1.empty()) base1.assign(n, 0.0);
    if (base2.empty()) base2.assign(n, 0.0);
    require_same_length(base1.size(), n, "base prior 1");
    require_same_length(base2.size(), n, "base prior 2");

    LlrSequence cross1(n, 0.0);
    LlrSequence cross2(n, 0.0);
    LlrSequence prior1 = base1;
    LlrSequence prior2 = base2;
    e1.set_prior(prior1);
    e2.set_prior(prior2);

    JointDecodeResult result;
    std::size_t iters1 = 0;
    std::size_t iters2 = 0;
    bool ok1 = false;
    bool ok2 = false;
    const auto& kernels = simd::active();

    for (std::size_t g = 0; g < options.global_iters; ++g) {
        result.global_iterations_used = g + 1;
        if (g > 0) {
            // cross priors from the other decoder's extrinsic beliefs
            const LlrSequence ext1 = e1.extrinsic(cross1);
            const LlrSequence ext2 = e2.extrinsic(cross2);
            for (std::size_t j = 0; j < n; ++j) {
                cross1[j] = soften_llr(ext2[j], q);
                cross2[j] = soften_llr(ext1[j], q);
            }
            LlrSequence next1(n);
            LlrSequence next2(n);
            kernels.add_clamp(base1.data(), cross1.data(), next1.data(), n, llr_clamp_bound);
            kernels.add_clamp(base2.data(), cross2.data(), next2.data(), n, llr_clamp_bound);
            if (next1 != prior1) {
                prior1 = std::move(next1);
                e1.set_prior(prior1);
                ok1 = false;
            }
            if (next2 != prior2) {
                prior2 = std::move(next2);
                e2.set_prior(prior2);
                ok2 = false;
            }
        }
        if (!ok1) {
            const auto [it, ok] = run(e1, options.local_iters, true, options.observer);
            iters1 += it;
            ok1 = ok;
        }
        if (!ok2) {
            const auto [it, ok] = run(e2, options.local_iters, true, options.observer);
            iters2 += it;
            ok2 = ok;
        }
        if (ok1 && ok2) break;
    }
    result.link1 = snapshot(e1, iters1, ok1);
    result.link2 = snapshot(e2, iters2, ok2);
    return result;
}

} // namespace

double soften_llr(double llr, double q)
{
    const double t = std::tanh(0.5 * llr) * (1.0 - 2.0 * q);
    return clamp_llr(2.0 * std::atanh(std::clamp(t, -1.0, 1.0)));
}

DecodeResult sum_product_decode(const LdpcCode& code, const BitSequence& syndrome, const LlrSequence& prior,
                                const SumProductOptions& options)
{
    require_same_length(prior.size(), code.n(), "sum_product_decode prior");
    return single_decode(LdpcEngine(code, syndrome), prior, options);
}

LlrSequence side_info_prior(const BitSequence& u2, Prob q)
{
    require_crossover(q, "q");
    const double magnitude = q <= 0.0 ? llr_clamp_bound : clamp_llr(std::log((1.0 - q) / q));
    LlrSequence out(u2.size());
    for (std::size_t j = 0; j < u2.size(); ++j) out[j] = u2[j] ? -magnitude : magnitude;
    return out;
}

JointDecodeResult joint_sum_product_decode(const LdpcCode& code1, const LdpcCode& code2, const BitSequence& s1,
                                           const BitSequence& s2, Prob q, const JointOptions& options,
                                           const LlrSequence& base_prior1, const LlrSequence& base_prior2)
{
    require_crossover(q, "q");
    return coupled_decode(LdpcEngine(code1, s1), LdpcEngine(code2, s2), q, options, base_prior1, base_prior2);
}

DecodeResult compound_decode(const CompoundCode& code, const BitSequence& syndrome, const LlrSequence& prior,
                             const SumProductOptions& options)
{
    require_same_length(prior.size(), code.n(), "compound_decode prior");
    return single_decode(CompoundEngine(code, syndrome), prior, options);
}

JointDecodeResult compound_joint_decode(const CompoundCode& code1, const CompoundCode& code2, const BitSequence& s1,
                                        const BitSequence& s2, Prob q, const JointOptions& options,
                                        const LlrSequence& base_prior1, const LlrSequence& base_prior2)
{
    require_crossover(q, "q");
    return coupled_decode(CompoundEngine(code1, s1), CompoundEngine(code2, s2), q, options, base_prior1,
                          base_prior2);
}

std::vector<SoftSymbol> reconstruct_soft(const BitSequence& u1_hat, const BitSequence& u2_hat,
                                         const ChainParams& params)
{
    require_same_length(u1_hat.size(), u2_hat.size(), "reconstruct_soft");
    // only four distinct posteriors exist
    std::array<SoftSymbol, 4> table{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) table[static_cast<std::size_t>(2 * a + b)] = chain_posterior(params, a, b);
    }
    std::vector<SoftSymbol> out(u1_hat.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = table[static_cast<std::size_t>(2 * u1_hat[j] + u2_hat[j])];
    return out;
}

std::vector<SoftSymbol> reconstruct_soft_successive(const BitSequence& u1_hat, const BitSequence& u2,
                                                    const ChainParams& params)
{
    return reconstruct_soft(u1_hat, u2, params);
}

Prob chain_crossover(const ChainParams& params)
{
    return binary_convolution(binary_convolution(params.d1, params.p1), binary_convolution(params.p2, params.d2));
}

} // namespace binceo
