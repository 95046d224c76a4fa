#pragma once

// Hand-rolled generators shared by the unit tests.

#include <cstdint>
#include <numeric>
#include <vector>

#include "binceo/graphs.hpp"
#include "binceo/llr.hpp"
#include "binceo/rng.hpp"

namespace testing {

using binceo::Rng;

inline double uniform(Rng& rng, double lo, double hi)
{
    return lo + (hi - lo) * binceo::uniform01(rng);
}

inline int coin(Rng& rng)
{
    return static_cast<int>(rng() & 1u);
}

inline binceo::LlrSequence random_llrs(Rng& rng, std::size_t n, double magnitude)
{
    binceo::LlrSequence out(n);
    for (auto& v : out) v = uniform(rng, -magnitude, magnitude);
    return out;
}

// Random factor graph without cycles: each new check joins variables taken
// from distinct connected components.
inline binceo::SparseBipartiteGraph random_forest(Rng& rng, std::size_t n_var, std::size_t max_checks)
{
    std::vector<std::size_t> parent(n_var);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<std::uint32_t>> factors;
    for (std::size_t attempt = 0; attempt < 4 * max_checks && factors.size() < max_checks; ++attempt) {
        const std::size_t want = 1 + binceo::uniform_below(rng, 4);
        std::vector<std::uint32_t> f;
        std::vector<std::size_t> roots;
        for (std::size_t tries = 0; tries < 20 && f.size() < want; ++tries) {
            const auto v = static_cast<std::uint32_t>(binceo::uniform_below(rng, n_var));
            const auto r = find(v);
            bool fresh = true;
            for (auto seen : roots) fresh = fresh && seen != r;
            if (!fresh) continue;
            roots.push_back(r);
            f.push_back(v);
        }
        for (std::size_t i = 1; i < roots.size(); ++i) parent[find(roots[i])] = find(roots[0]);
        factors.push_back(std::move(f));
    }
    return binceo::SparseBipartiteGraph(n_var, std::move(factors));
}

} // namespace testing
