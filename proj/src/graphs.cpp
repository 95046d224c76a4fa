#include "binceo/graphs.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "binceo/error.hpp"
#include "binceo/rng.hpp"

namespace binceo {

DegreeDistribution DegreeDistribution::regular(int var_degree, int fac_degree)
{
    return DegreeDistribution{{{var_degree, 1.0}}, {{fac_degree, 1.0}}};
}

namespace {

void validate_side(const std::vector<DegreeFraction>& side, const char* name)
{
    if (side.empty()) return;
    double total = 0.0;
    for (const auto& df : side) {
        if (df.degree < 1) throw construction_error(std::string(name) + ": degrees must be >= 1");
        if (!(df.fraction >= 0.0)) throw construction_error(std::string(name) + ": negative fraction");
        total += df.fraction;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw construction_error(std::string(name) + ": fractions sum to " + std::to_string(total));
    }
}

// Largest-remainder apportionment of n nodes over the listed degrees.
std::vector<int> apportion(const std::vector<DegreeFraction>& side, std::size_t n)
{
    std::vector<std::size_t> counts(side.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < side.size(); ++i) {
        const double exact = side[i].fraction * static_cast<double>(n);
        counts[i] = static_cast<std::size_t>(std::floor(exact));
        assigned += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++counts[remainders[r % remainders.size()].second];

    std::vector<int> degrees;
    degrees.reserve(n);
    for (std::size_t i = 0; i < side.size(); ++i) degrees.insert(degrees.end(), counts[i], side[i].degree);
    return degrees;
}

std::vector<int> balanced(std::size_t n, std::size_t edges)
{
    if (n == 0) return {};
    if (edges < n) throw construction_error("balanced side would leave degree-0 nodes");
    std::vector<int> degrees(n, static_cast<int>(edges / n));
    for (std::size_t i = 0; i < edges % n; ++i) ++degrees[i];
    return degrees;
}

std::size_t total(const std::vector<int>& degrees)
{
    return std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
}

// Adjust up to one unit per node until the side sums to `target`.
void repair_budget(std::vector<int>& degrees, std::size_t target)
{
    std::size_t current = total(degrees);
    for (std::size_t i = 0; i < degrees.size() && current < target; ++i, ++current) ++degrees[i];
    for (std::size_t i = 0; i < degrees.size() && current > target; ++i) {
        if (degrees[i] > 1) {
            --degrees[i];
            --current;
        }
    }
    if (current != target) throw construction_error("inconsistent degree budget");
}

} // namespace

void DegreeDistribution::validate() const
{
    validate_side(variable, "variable side");
    validate_side(factor, "factor side");
    if (variable.empty() && factor.empty()) throw construction_error("both sides balanced: no edge budget");
}

std::vector<DegreeFraction> parse_degree_list(const std::string& text)
{
    std::vector<DegreeFraction> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw construction_error("degree entry needs 'degree:fraction': " + item);
        try {
            std::size_t used = 0;
            DegreeFraction df;
            df.degree = std::stoi(item.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument(item);
            const std::string frac = item.substr(colon + 1);
            df.fraction = std::stod(frac, &used);
            if (used != frac.size()) throw std::invalid_argument(item);
            out.push_back(df);
        } catch (const std::logic_error&) {
            throw construction_error("malformed degree entry: " + item);
        }
    }
    validate_side(out, "degree list");
    return out;
}

std::string format_degree_list(std::span<const DegreeFraction> list)
{
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out << ',';
        out << list[i].degree << ':' << list[i].fraction;
    }
    return out.str();
}

SparseBipartiteGraph::SparseBipartiteGraph(std::size_t n_var, std::vector<std::vector<std::uint32_t>> factors)
    : n_var_(n_var)
{
    fac_offsets_.assign(1, 0);
    fac_offsets_.reserve(factors.size() + 1);
    for (auto& f : factors) {
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw construction_error("duplicate edge in factor");
        if (!f.empty() && f.back() >= n_var) throw construction_error("variable index out of range");
        fac_vars_.insert(fac_vars_.end(), f.begin(), f.end());
        fac_offsets_.push_back(fac_vars_.size());
    }

    std::vector<std::size_t> degree(n_var, 0);
    for (auto v : fac_vars_) ++degree[v];
    var_offsets_.assign(n_var + 1, 0);
    for (std::size_t v = 0; v < n_var; ++v) var_offsets_[v + 1] = var_offsets_[v] + degree[v];
    var_edges_.resize(fac_vars_.size());
    std::vector<std::size_t> fill(var_offsets_.begin(), var_offsets_.end() - 1);
    for (std::size_t e = 0; e < fac_vars_.size(); ++e) var_edges_[fill[fac_vars_[e]]++] = static_cast<std::uint32_t>(e);
}

BitSequence SparseBipartiteGraph::parity(const BitSequence& x) const
{
    require_same_length(x.size(), n_var_, "parity");
    BitSequence out(n_fac());
    for (std::size_t f = 0; f < n_fac(); ++f) {
        int acc = 0;
        for (auto v : factor(f)) acc ^= x[v];
        out.set(f, acc);
    }
    return out;
}

DegreeDistribution SparseBipartiteGraph::realized_distribution() const
{
    auto histogram = [](const std::vector<std::size_t>& degrees) {
        std::vector<DegreeFraction> out;
        if (degrees.empty()) return out;
        const std::size_t max_degree = *std::max_element(degrees.begin(), degrees.end());
        std::vector<std::size_t> counts(max_degree + 1, 0);
        for (auto d : degrees) ++counts[d];
        for (std::size_t d = 0; d <= max_degree; ++d) {
            if (counts[d]) {
                out.push_back({static_cast<int>(d),
                               static_cast<double>(counts[d]) / static_cast<double>(degrees.size())});
            }
        }
        return out;
    };
    std::vector<std::size_t> vd(n_var_), fd(n_fac());
    for (std::size_t v = 0; v < n_var_; ++v) vd[v] = var_degree(v);
    for (std::size_t f = 0; f < n_fac(); ++f) fd[f] = factor_degree(f);
    return DegreeDistribution{histogram(vd), histogram(fd)};
}

bool SparseBipartiteGraph::is_forest() const
{
    std::vector<std::size_t> parent(n_var_ + n_fac());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t f = 0; f < n_fac(); ++f) {
        for (auto v : factor(f)) {
            const auto a = find(v);
            const auto b = find(n_var_ + f);
            if (a == b) return false;
            parent[a] = b;
        }
    }
    return true;
}

void SparseBipartiteGraph::write_adjacency(std::ostream& out) const
{
    for (std::size_t f = 0; f < n_fac(); ++f) {
        const auto vars = factor(f);
        for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? " " : "") << vars[i];
        out << '\n';
    }
}

SparseBipartiteGraph SparseBipartiteGraph::read_adjacency(std::istream& in, std::size_t n_var)
{
    std::vector<std::vector<std::uint32_t>> factors;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<std::uint32_t> vars;
        long long v = 0;
        while (row >> v) {
            if (v < 0) throw construction_error("negative variable index");
            vars.push_back(static_cast<std::uint32_t>(v));
        }
        if (!row.eof()) throw construction_error("malformed adjacency line: " + line);
        factors.push_back(std::move(vars));
    }
    return SparseBipartiteGraph(n_var, std::move(factors));
}

SparseBipartiteGraph sample_graph(const DegreeDistribution& dist, std::size_t n_var, std::size_t n_fac,
                                  std::uint64_t seed)
{
    dist.validate();
    if (n_var == 0 || n_fac == 0) throw construction_error("graph needs at least one node per side");
    Rng rng(seed);

    std::vector<int> var_deg;
    std::vector<int> fac_deg;
    if (!dist.variable.empty()) var_deg = apportion(dist.variable, n_var);
    if (!dist.factor.empty()) fac_deg = apportion(dist.factor, n_fac);
    shuffle(var_deg, rng);
    shuffle(fac_deg, rng);
    if (var_deg.empty()) {
        var_deg = balanced(n_var, total(fac_deg));
        shuffle(var_deg, rng);
    } else if (fac_deg.empty()) {
        fac_deg = balanced(n_fac, total(var_deg));
        shuffle(fac_deg, rng);
    } else if (total(var_deg) != total(fac_deg)) {
        repair_budget(fac_deg, total(var_deg));
    }
    for (int d : fac_deg) {
        if (static_cast<std::size_t>(d) > n_var) throw construction_error("factor degree exceeds variable count");
    }
    for (int d : var_deg) {
        if (static_cast<std::size_t>(d) > n_fac) throw construction_error("variable degree exceeds factor count");
    }

    // variable sockets, consumed left to right by the factors in order
    std::vector<std::uint32_t> pool;
    pool.reserve(total(var_deg));
    for (std::size_t v = 0; v < n_var; ++v) pool.insert(pool.end(), static_cast<std::size_t>(var_deg[v]), static_cast<std::uint32_t>(v));
    shuffle(pool, rng);

    constexpr int retry_cap = 100;
    std::vector<std::uint32_t> owner(pool.size()); // factor of each placed socket
    std::vector<std::uint32_t> mark(n_var, UINT32_MAX); // last factor that took v
    std::size_t pos = 0;
    std::vector<std::size_t> start(n_fac + 1, 0);

    // replace the duplicate at pool[pos] by swapping with a placed socket of
    // an earlier factor that can accept pool[pos] without a duplicate
    auto repair = [&](std::uint32_t f) {
        const std::uint32_t v = pool[pos];
        if (pos == 0) return false;
        const std::size_t offset = static_cast<std::size_t>(uniform_below(rng, pos));
        for (std::size_t t = 0; t < pos; ++t) {
            const std::size_t e = (offset + t) % pos;
            const std::uint32_t g = owner[e];
            if (g == f) continue;
            const std::uint32_t w = pool[e];
            if (mark[w] == f) continue;
            const auto gb = pool.begin() + static_cast<std::ptrdiff_t>(start[g]);
            const auto ge = pool.begin() + static_cast<std::ptrdiff_t>(start[g + 1]);
            if (std::find(gb, ge, v) != ge) continue;
            std::swap(pool[e], pool[pos]);
            return true;
        }
        return false;
    };

    for (std::uint32_t f = 0; f < n_fac; ++f) {
        start[f] = pos;
        for (int slot = 0; slot < fac_deg[f]; ++slot) {
            bool placed = false;
            for (int attempt = 0; attempt < retry_cap && !placed; ++attempt) {
                const std::size_t r = pos + static_cast<std::size_t>(uniform_below(rng, pool.size() - pos));
                if (mark[pool[r]] != f) {
                    std::swap(pool[pos], pool[r]);
                    placed = true;
                }
            }
            if (!placed && !repair(f)) throw construction_error("socket matching failed: retry cap exhausted");
            mark[pool[pos]] = f;
            owner[pos] = f;
            ++pos;
        }
        start[f + 1] = pos;
    }

    std::vector<std::vector<std::uint32_t>> factors(n_fac);
    for (std::size_t f = 0; f < n_fac; ++f) factors[f].assign(pool.begin() + static_cast<std::ptrdiff_t>(start[f]),
                                                           pool.begin() + static_cast<std::ptrdiff_t>(start[f + 1]));
    return SparseBipartiteGraph(n_var, std::move(factors));
}

LdgmCode::LdgmCode(SparseBipartiteGraph graph) : graph_(std::move(graph))
{
    if (k() == 0 || k() > n()) throw construction_error("LDGM needs 0 < k <= n");
}

BitSequence LdgmCode::encode(const BitSequence& info_bits) const
{
    require_same_length(info_bits.size(), k(), "LDGM encode");
    return graph_.parity(info_bits);
}

LdpcCode::LdpcCode(SparseBipartiteGraph graph) : graph_(std::move(graph))
{
    if (m() == 0 || m() >= n()) throw construction_error("LDPC needs 0 < m < n");
}

BitSequence LdpcCode::syndrome(const BitSequence& word) const
{
    require_same_length(word.size(), n(), "syndrome");
    return graph_.parity(word);
}

CompoundDistributions default_compound_distributions()
{
    CompoundDistributions d;
    d.ldgm.factor = {{6, 1.0}};
    d.ldpc.variable = {{2, 1.0}};
    return d;
}

LdgmCode build_ldgm(std::size_t n, double ldgm_rate, const DegreeDistribution& dist, std::uint64_t seed)
{
    if (!(ldgm_rate > 0.0 && ldgm_rate <= 1.0)) throw construction_error("ldgm_rate must lie in (0, 1]");
    const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ldgm_rate));
    if (k == 0 || k > n) throw construction_error("degenerate LDGM size");
    return LdgmCode(sample_graph(dist, k, n, seed));
}

LdpcCode build_ldpc(std::size_t n, double syndrome_rate, const DegreeDistribution& dist, std::uint64_t seed)
{
    if (!(syndrome_rate > 0.0 && syndrome_rate < 1.0)) throw construction_error("syndrome_rate must lie in (0, 1)");
    const auto m = static_cast<std::size_t>(std::llround(static_cast<double>(n) * syndrome_rate));
    if (m == 0 || m >= n) throw construction_error("degenerate LDPC size");
    return LdpcCode(sample_graph(dist, n, m, seed));
}

CompoundCode build_compound(std::size_t n, double ldgm_rate, double syndrome_rate,
                            const CompoundDistributions& dists, std::uint64_t seed)
{
    CompoundCode cc;
    cc.ldgm = build_ldgm(n, ldgm_rate, dists.ldgm, derive_seed(seed, "ldgm"));
    cc.ldpc = build_ldpc(n, syndrome_rate, dists.ldpc, derive_seed(seed, "ldpc"));
    return cc;
}

LdgmCode build_systematic_ldgm(std::size_t n, double ldgm_rate, const DegreeDistribution& parity_dist,
                               std::uint64_t seed)
{
    if (!(ldgm_rate > 0.0 && ldgm_rate <= 1.0)) throw construction_error("ldgm_rate must lie in (0, 1]");
    const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ldgm_rate));
    if (k == 0 || k > n) throw construction_error("degenerate LDGM size");
    std::vector<std::vector<std::uint32_t>> factors;
    factors.reserve(n);
    for (std::size_t j = 0; j < k; ++j) factors.push_back({static_cast<std::uint32_t>(j)});
    if (k < n) {
        const SparseBipartiteGraph parity = sample_graph(parity_dist, k, n - k, seed);
        for (std::size_t f = 0; f < parity.n_fac(); ++f) {
            const auto vars = parity.factor(f);
            factors.emplace_back(vars.begin(), vars.end());
        }
    }
    return LdgmCode(SparseBipartiteGraph(k, std::move(factors)));
}

LdpcCode build_binning_ldpc(std::size_t n, const BinningLayout& layout, const DegreeDistribution& dist,
                            std::uint64_t seed)
{
    if (layout.k == 0 || layout.k > n) throw construction_error("binning layout: k must lie in [1, n]");
    if (layout.hidden_begin > layout.hidden_end || layout.hidden_end > layout.k) {
        throw construction_error("binning layout: hidden range outside [0, k)");
    }
    if (layout.hidden_checks > layout.hidden()) {
        throw construction_error("binning layout: more checks than hidden bits");
    }
    if (layout.hidden() > 0 && layout.hidden_checks == 0) {
        throw construction_error("binning layout: hidden bits need at least one check");
    }
    const std::size_t m = layout.checks();
    if (m == 0 || m >= n) throw construction_error("degenerate LDPC size");

    std::vector<std::vector<std::uint32_t>> factors;
    factors.reserve(m);
    for (std::size_t j = 0; j < layout.k; ++j) {
        if (j < layout.hidden_begin || j >= layout.hidden_end) factors.push_back({static_cast<std::uint32_t>(j)});
    }
    if (layout.hidden_checks > 0) {
        const SparseBipartiteGraph hidden = sample_graph(dist, layout.hidden(), layout.hidden_checks, seed);
        for (std::size_t f = 0; f < hidden.n_fac(); ++f) {
            std::vector<std::uint32_t> vars;
            for (auto v : hidden.factor(f)) vars.push_back(static_cast<std::uint32_t>(layout.hidden_begin + v));
            factors.push_back(std::move(vars));
        }
    }
    return LdpcCode(SparseBipartiteGraph(n, std::move(factors)));
}

CompoundCode build_nested_compound(std::size_t n, double ldgm_rate, double hidden_from, double hidden_to,
                                   std::size_t binning_gain, const CompoundDistributions& dists,
                                   std::uint64_t seed)
{
    if (!(hidden_from >= 0.0 && hidden_from <= hidden_to && hidden_to <= 1.0)) {
        throw construction_error("hidden range must satisfy 0 <= from <= to <= 1");
    }
    CompoundCode cc;
    cc.ldgm = build_systematic_ldgm(n, ldgm_rate, dists.ldgm, derive_seed(seed, "ldgm"));
    BinningLayout layout;
    layout.k = cc.ldgm.k();
    const auto kd = static_cast<double>(layout.k);
    layout.hidden_begin = static_cast<std::size_t>(std::llround(hidden_from * kd));
    layout.hidden_end = static_cast<std::size_t>(std::llround(hidden_to * kd));
    if (binning_gain > layout.hidden()) throw construction_error("binning gain exceeds the hidden range");
    layout.hidden_checks = layout.hidden() - binning_gain;
    cc.ldpc = build_binning_ldpc(n, layout, dists.ldpc, derive_seed(seed, "ldpc"));
    return cc;
}

} // namespace binceo
