#pragma once

// Sparse bipartite graphs for LDGM quantizers and LDPC syndrome formers.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binceo/bits.hpp"

namespace binceo {

struct DegreeFraction {
    int degree = 1;
    double fraction = 1.0;

    friend bool operator==(const DegreeFraction&, const DegreeFraction&) = default;
};

// Node-perspective degree distribution for both sides of a bipartite graph.
// An empty side is "balanced": its degrees are spread as evenly as possible
// over the edge budget fixed by the other side.
struct DegreeDistribution {
    std::vector<DegreeFraction> variable;
    std::vector<DegreeFraction> factor;

    static DegreeDistribution regular(int var_degree, int fac_degree);

    // Throws construction_error if a listed side is malformed.
    void validate() const;

    friend bool operator==(const DegreeDistribution&, const DegreeDistribution&) = default;
};

// "2:0.5,3:0.5" <-> degree list; empty text is the balanced side.
std::vector<DegreeFraction> parse_degree_list(const std::string& text);
std::string format_degree_list(std::span<const DegreeFraction> list);

// Per-factor sorted adjacency in CSR form, with the transposed
// (per-variable) view built once at construction. Edge e is the e-th entry of
// the factor-major list; var_edges() exposes edge indices grouped by variable.
class SparseBipartiteGraph {
public:
    SparseBipartiteGraph() = default;
    // Throws construction_error on duplicate edges or out-of-range indices.
    SparseBipartiteGraph(std::size_t n_var, std::vector<std::vector<std::uint32_t>> factors);

    std::size_t n_var() const noexcept { return n_var_; }
    std::size_t n_fac() const noexcept { return fac_offsets_.empty() ? 0 : fac_offsets_.size() - 1; }
    std::size_t n_edges() const noexcept { return fac_vars_.size(); }

    std::span<const std::uint32_t> factor(std::size_t f) const noexcept
    {
        return {fac_vars_.data() + fac_offsets_[f], fac_offsets_[f + 1] - fac_offsets_[f]};
    }
    std::size_t factor_begin(std::size_t f) const noexcept { return fac_offsets_[f]; }
    std::size_t factor_degree(std::size_t f) const noexcept { return fac_offsets_[f + 1] - fac_offsets_[f]; }

    // Edge indices incident to variable v, in increasing order.
    std::span<const std::uint32_t> var_edges(std::size_t v) const noexcept
    {
        return {var_edges_.data() + var_offsets_[v], var_offsets_[v + 1] - var_offsets_[v]};
    }
    std::size_t var_degree(std::size_t v) const noexcept { return var_offsets_[v + 1] - var_offsets_[v]; }

    // Variable index at the far end of edge e.
    std::uint32_t edge_var(std::size_t e) const noexcept { return fac_vars_[e]; }
    std::span<const std::uint32_t> edge_vars() const noexcept { return fac_vars_; }

    // mod-2 sum of x over the variables of each factor
    BitSequence parity(const BitSequence& x) const;

    // Realized node-perspective distributions.
    DegreeDistribution realized_distribution() const;

    // True when no cycle exists (a forest).
    bool is_forest() const;

    void write_adjacency(std::ostream& out) const;
    static SparseBipartiteGraph read_adjacency(std::istream& in, std::size_t n_var);

    friend bool operator==(const SparseBipartiteGraph& a, const SparseBipartiteGraph& b)
    {
        return a.n_var_ == b.n_var_ && a.fac_offsets_ == b.fac_offsets_ && a.fac_vars_ == b.fac_vars_;
    }

private:
    std::size_t n_var_ = 0;
    std::vector<std::size_t> fac_offsets_{0};
    std::vector<std::uint32_t> fac_vars_;
    std::vector<std::size_t> var_offsets_{0};
    std::vector<std::uint32_t> var_edges_;
};

// Deterministic under `seed`. Per-node degrees follow the distribution exactly
// when the two sides' edge budgets agree; otherwise the factor side (or the
// balanced side) absorbs the difference with at most +-1 per node.
SparseBipartiteGraph sample_graph(const DegreeDistribution& dist, std::size_t n_var, std::size_t n_fac,
                                  std::uint64_t seed);

// Output j of the codeword is the mod-2 sum of the information bits adjacent
// to factor j: n_fac = n (block length), n_var = k.
class LdgmCode {
public:
    LdgmCode() = default;
    explicit LdgmCode(SparseBipartiteGraph graph);

    std::size_t n() const noexcept { return graph_.n_fac(); }
    std::size_t k() const noexcept { return graph_.n_var(); }
    double rate() const noexcept { return static_cast<double>(k()) / static_cast<double>(n()); }
    const SparseBipartiteGraph& graph() const noexcept { return graph_; }

    BitSequence encode(const BitSequence& info_bits) const;

    friend bool operator==(const LdgmCode&, const LdgmCode&) = default;

private:
    SparseBipartiteGraph graph_;
};

// Check i of the syndrome is the mod-2 sum of the codeword bits adjacent to
// factor i: n_var = n, n_fac = m.
class LdpcCode {
public:
    LdpcCode() = default;
    explicit LdpcCode(SparseBipartiteGraph graph);

    std::size_t n() const noexcept { return graph_.n_var(); }
    std::size_t m() const noexcept { return graph_.n_fac(); }
    const SparseBipartiteGraph& graph() const noexcept { return graph_; }

    BitSequence syndrome(const BitSequence& word) const;

    friend bool operator==(const LdpcCode&, const LdpcCode&) = default;

private:
    SparseBipartiteGraph graph_;
};

struct CompoundCode {
    LdgmCode ldgm;
    LdpcCode ldpc;

    std::size_t n() const noexcept { return ldgm.n(); }
    double transmitted_rate() const noexcept
    {
        return static_cast<double>(ldpc.m()) / static_cast<double>(ldpc.n());
    }

    friend bool operator==(const CompoundCode&, const CompoundCode&) = default;
};

struct CompoundDistributions {
    DegreeDistribution ldgm;
    DegreeDistribution ldpc;
};

// For nested codes: LDGM parity outputs of degree 6 (information side
// balanced), binning checks over degree-2 hidden bits (check side balanced).
CompoundDistributions default_compound_distributions();

LdgmCode build_ldgm(std::size_t n, double ldgm_rate, const DegreeDistribution& dist, std::uint64_t seed);
LdpcCode build_ldpc(std::size_t n, double syndrome_rate, const DegreeDistribution& dist, std::uint64_t seed);

// Independently drawn LDGM/LDPC pair over the same block, each graph sampled
// from its distribution over all n positions.
// k = round(n * ldgm_rate), m = round(n * syndrome_rate).
CompoundCode build_compound(std::size_t n, double ldgm_rate, double syndrome_rate,
                            const CompoundDistributions& dists, std::uint64_t seed);

// LDGM whose first k outputs copy the information bits (output j = w_j for
// j < k); the other n - k outputs are parities sampled from `parity_dist`
// over the k information bits.
LdgmCode build_systematic_ldgm(std::size_t n, double ldgm_rate, const DegreeDistribution& parity_dist,
                               std::uint64_t seed);

// Syndrome former restricted to the systematic positions [0, k) of a
// systematic LDGM. Positions outside [hidden_begin, hidden_end) are revealed
// by single-bit checks; the hidden ones get hidden_checks parity checks
// sampled from `dist`. Checks are ordered revealed first.
struct BinningLayout {
    std::size_t k = 0;
    std::size_t hidden_begin = 0;
    std::size_t hidden_end = 0;
    std::size_t hidden_checks = 0;

    std::size_t hidden() const noexcept { return hidden_end - hidden_begin; }
    std::size_t checks() const noexcept { return k - hidden() + hidden_checks; }
};

LdpcCode build_binning_ldpc(std::size_t n, const BinningLayout& layout, const DegreeDistribution& dist,
                            std::uint64_t seed);

// Nested compound code: a systematic LDGM plus a binning syndrome former on
// its information bits, so the syndrome of u is a syndrome of w. The hidden
// range is given as fractions [hidden_from, hidden_to) of k; binning_gain
// checks are removed from the hidden range relative to revealing it.
CompoundCode build_nested_compound(std::size_t n, double ldgm_rate, double hidden_from, double hidden_to,
                                   std::size_t binning_gain, const CompoundDistributions& dists,
                                   std::uint64_t seed);

} // namespace binceo
