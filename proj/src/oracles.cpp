#include "binceo/oracles.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "binceo/error.hpp"

namespace binceo::oracles {

double JointPmf::total() const
{
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
}

double JointPmf::entropy(unsigned mask) const
{
    std::array<double, 32> marginal{};
    for (unsigned i = 0; i < 32; ++i) marginal[i & mask] += mass[i];
    double h = 0.0;
    for (double m : marginal) {
        if (m > 0.0) h -= m * std::log2(m);
    }
    return h;
}

double JointPmf::prob_parity_odd(unsigned mask) const
{
    double s = 0.0;
    for (unsigned i = 0; i < 32; ++i) {
        if (std::popcount(i & mask) % 2 == 1) s += mass[i];
    }
    return s;
}

JointPmf enumerate_joint(Prob p1, Prob p2, Prob d1, Prob d2)
{
    auto bsc = [](int in, int out, double crossover) { return in == out ? 1.0 - crossover : crossover; };
    JointPmf pmf;
    for (unsigned i = 0; i < 32; ++i) {
        const int x = JointPmf::bit(i, var_x);
        const int y1 = JointPmf::bit(i, var_y1);
        const int y2 = JointPmf::bit(i, var_y2);
        const int u1 = JointPmf::bit(i, var_u1);
        const int u2 = JointPmf::bit(i, var_u2);
        pmf.mass[i] = 0.5 * bsc(x, y1, p1) * bsc(x, y2, p2) * bsc(y1, u1, d1) * bsc(y2, u2, d2);
    }
    return pmf;
}

double mutual_information(const JointPmf& pmf, unsigned a, unsigned b)
{
    return pmf.entropy(a) + pmf.entropy(b) - pmf.entropy(a | b);
}

double conditional_mutual_information(const JointPmf& pmf, unsigned a, unsigned b, unsigned given)
{
    return pmf.entropy(a | given) + pmf.entropy(b | given) - pmf.entropy(a | b | given) - pmf.entropy(given);
}

double conditional_entropy(const JointPmf& pmf, unsigned target, unsigned given)
{
    return pmf.entropy(target | given) - pmf.entropy(given);
}

namespace {

std::vector<std::uint32_t> factor_masks(const SparseBipartiteGraph& g)
{
    std::vector<std::uint32_t> masks(g.n_fac(), 0);
    for (std::size_t f = 0; f < g.n_fac(); ++f) {
        for (auto v : g.factor(f)) masks[f] |= 1u << v;
    }
    return masks;
}

} // namespace

BruteForceQuantization brute_force_quantize(const LdgmCode& code, const BitSequence& y)
{
    require_same_length(y.size(), code.n(), "brute_force_quantize");
    if (code.k() > enumeration_cap) throw capacity_error("brute_force_quantize: k exceeds enumeration cap");
    const auto masks = factor_masks(code.graph());

    std::uint32_t best_word = 0;
    std::size_t best_distance = std::numeric_limits<std::size_t>::max();
    const std::uint32_t words = 1u << code.k();
    for (std::uint32_t w = 0; w < words; ++w) {
        std::size_t distance = 0;
        for (std::size_t j = 0; j < code.n() && distance < best_distance; ++j) {
            const int out = std::popcount(w & masks[j]) & 1;
            distance += (out != y[j]);
        }
        if (distance < best_distance) {
            best_distance = distance;
            best_word = w;
        }
    }

    BruteForceQuantization result;
    result.info_bits = BitSequence(code.k());
    for (std::size_t i = 0; i < code.k(); ++i) result.info_bits.set(i, static_cast<int>((best_word >> i) & 1u));
    result.distortion = static_cast<double>(best_distance) / static_cast<double>(code.n());
    return result;
}

LlrSequence exact_marginals(const LdpcCode& code, const BitSequence& syndrome, const LlrSequence& prior)
{
    const std::size_t n = code.n();
    require_same_length(syndrome.size(), code.m(), "exact_marginals syndrome");
    require_same_length(prior.size(), n, "exact_marginals prior");
    if (n > enumeration_cap) throw capacity_error("exact_marginals: n exceeds enumeration cap");
    const auto masks = factor_masks(code.graph());

    // log-weight of a word relative to the all-zero word: -sum of LLRs of its ones
    const std::uint32_t words = 1u << n;
    std::vector<double> log_weight;
    std::vector<std::uint32_t> consistent;
    double peak = -std::numeric_limits<double>::infinity();
    for (std::uint32_t w = 0; w < words; ++w) {
        bool ok = true;
        for (std::size_t i = 0; i < masks.size() && ok; ++i) ok = (std::popcount(w & masks[i]) & 1) == syndrome[i];
        if (!ok) continue;
        double lw = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if ((w >> j) & 1u) lw -= prior[j];
        }
        consistent.push_back(w);
        log_weight.push_back(lw);
        peak = std::max(peak, lw);
    }
    if (consistent.empty()) throw domain_error("exact_marginals: syndrome has no consistent word");

    std::vector<double> mass0(n, 0.0);
    std::vector<double> mass1(n, 0.0);
    for (std::size_t c = 0; c < consistent.size(); ++c) {
        const double weight = std::exp(log_weight[c] - peak);
        for (std::size_t j = 0; j < n; ++j) ((consistent[c] >> j) & 1u ? mass1 : mass0)[j] += weight;
    }

    LlrSequence out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = std::log(mass0[j]) - std::log(mass1[j]);
    return out;
}

} // namespace binceo::oracles
