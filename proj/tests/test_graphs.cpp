#include "doctest.h"

#include <set>
#include <sstream>

#include "binceo/error.hpp"
#include "binceo/graphs.hpp"
#include "support.hpp"

using namespace binceo;

namespace {

bool no_duplicates(const SparseBipartiteGraph& g)
{
    for (std::size_t f = 0; f < g.n_fac(); ++f) {
        const auto vars = g.factor(f);
        const std::set<std::uint32_t> unique(vars.begin(), vars.end());
        if (unique.size() != vars.size()) return false;
        for (auto v : vars) {
            if (v >= g.n_var()) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("degree list parsing")
{
    const auto list = parse_degree_list("2:0.5, 3:0.5");
    REQUIRE(list.size() == 2);
    CHECK(list[0].degree == 2);
    CHECK(list[1].fraction == 0.5);
    CHECK(parse_degree_list(format_degree_list(list)) == list);
    CHECK(parse_degree_list("").empty());
    CHECK_THROWS_AS(parse_degree_list("2:0.5"), construction_error);
    CHECK_THROWS_AS(parse_degree_list("0:1"), construction_error);
    CHECK_THROWS_AS(parse_degree_list("2;1"), construction_error);
    CHECK_THROWS_AS(parse_degree_list("x:1"), construction_error);
}

TEST_CASE("regular (3,6) graph")
{
    const auto g = sample_graph(DegreeDistribution::regular(3, 6), 6, 3, 5);
    CHECK(g.n_edges() == 18);
    CHECK(no_duplicates(g));
    for (std::size_t v = 0; v < 6; ++v) CHECK(g.var_degree(v) == 3);
    for (std::size_t f = 0; f < 3; ++f) CHECK(g.factor_degree(f) == 6);
}

TEST_CASE("forced single-check structure")
{
    const auto g = sample_graph(DegreeDistribution::regular(1, 4), 4, 1, 99);
    REQUIRE(g.n_fac() == 1);
    CHECK(std::vector<std::uint32_t>(g.factor(0).begin(), g.factor(0).end()) == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("sampling is deterministic in the seed")
{
    const DegreeDistribution dist{{}, {{2, 0.4}, {3, 0.6}}};
    CHECK(sample_graph(dist, 300, 500, 7) == sample_graph(dist, 300, 500, 7));
    CHECK_FALSE(sample_graph(dist, 300, 500, 7) == sample_graph(dist, 300, 500, 8));
}

TEST_CASE("inconsistent budgets are rejected")
{
    CHECK_THROWS_AS(sample_graph(DegreeDistribution::regular(1, 9), 4, 1, 1), construction_error);
    CHECK_THROWS_AS(sample_graph(DegreeDistribution::regular(5, 2), 4, 3, 1), construction_error);
}

TEST_CASE("property: sampled graphs are simple and follow their distribution")
{
    Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n_var = 50 + binceo::uniform_below(rng, 400);
        const std::size_t n_fac = n_var / 2 + binceo::uniform_below(rng, n_var);
        const int d = 2 + static_cast<int>(binceo::uniform_below(rng, 4));
        const DegreeDistribution dist{{}, {{d, 0.7}, {d + 1, 0.3}}};
        const auto g = sample_graph(dist, n_var, n_fac, rng());
        CHECK(no_duplicates(g));
        CHECK(g.n_var() == n_var);
        CHECK(g.n_fac() == n_fac);
        // balanced variable side: degrees differ by at most one
        std::size_t lo = g.n_edges();
        std::size_t hi = 0;
        for (std::size_t v = 0; v < n_var; ++v) {
            lo = std::min(lo, g.var_degree(v));
            hi = std::max(hi, g.var_degree(v));
        }
        CHECK(hi - lo <= 1);
        const auto realized = g.realized_distribution();
        double frac_d = 0.0;
        for (const auto& df : realized.factor) {
            if (df.degree == d) frac_d = df.fraction;
        }
        CHECK(frac_d == doctest::Approx(0.7).epsilon(1.5 / static_cast<double>(n_fac)));
    }
}

TEST_CASE("adjacency text round-trips")
{
    const auto g = sample_graph(DegreeDistribution{{{3, 1.0}}, {}}, 40, 20, 3);
    std::stringstream text;
    g.write_adjacency(text);
    CHECK(SparseBipartiteGraph::read_adjacency(text, 40) == g);
}

TEST_CASE("forest detection")
{
    CHECK(SparseBipartiteGraph(4, {{0, 1}, {1, 2}, {3}}).is_forest());
    CHECK_FALSE(SparseBipartiteGraph(3, {{0, 1}, {1, 2}, {0, 2}}).is_forest());
    CHECK_FALSE(SparseBipartiteGraph(2, {{0, 1}, {0, 1}}).is_forest());
}

TEST_CASE("graph construction validates adjacency")
{
    CHECK_THROWS_AS(SparseBipartiteGraph(3, {{0, 0}}), construction_error);
    CHECK_THROWS_AS(SparseBipartiteGraph(3, {{0, 3}}), construction_error);
}

TEST_CASE("compound code bookkeeping")
{
    CompoundDistributions dists;
    dists.ldgm.factor = {{2, 0.5}, {3, 0.5}};
    dists.ldpc.variable = {{3, 1.0}};
    const CompoundCode cc = build_compound(1000, 0.55, 0.46, dists, 17);
    CHECK(cc.ldgm.k() == 550);
    CHECK(cc.ldgm.n() == 1000);
    CHECK(cc.ldpc.m() == 460);
    CHECK(cc.transmitted_rate() == doctest::Approx(0.46));
    CHECK(build_compound(1000, 0.55, 0.46, dists, 17) == cc);
    CHECK_THROWS_AS(build_compound(1000, 0.0, 0.46, dists, 17), construction_error);
    CHECK_THROWS_AS(build_compound(1000, 0.55, 1.0, dists, 17), construction_error);
    CHECK_THROWS_AS(build_compound(1000, 0.0004, 0.46, dists, 17), construction_error);
}

TEST_CASE("systematic LDGM copies its information bits")
{
    const LdgmCode code = build_systematic_ldgm(200, 0.4, default_compound_distributions().ldgm, 4);
    REQUIRE(code.k() == 80);
    Rng rng(5);
    const BitSequence w = bernoulli_bits(rng, code.k(), 0.5);
    const BitSequence u = code.encode(w);
    for (std::size_t j = 0; j < code.k(); ++j) CHECK(u[j] == w[j]);
    for (std::size_t j = code.k(); j < code.n(); ++j) CHECK(code.graph().factor_degree(j) == 6);
}

TEST_CASE("binning layout")
{
    BinningLayout layout;
    layout.k = 100;
    layout.hidden_begin = 20;
    layout.hidden_end = 70;
    layout.hidden_checks = 45;
    const LdpcCode code = build_binning_ldpc(300, layout, default_compound_distributions().ldpc, 9);
    CHECK(code.n() == 300);
    CHECK(code.m() == 50 + 45);
    CHECK(layout.checks() == code.m());
    // revealed positions first, each checked alone
    std::size_t revealed = 0;
    for (std::size_t f = 0; f < 50; ++f) {
        REQUIRE(code.graph().factor_degree(f) == 1);
        const auto v = code.graph().factor(f)[0];
        CHECK((v < 20 || (v >= 70 && v < 100)));
        ++revealed;
    }
    CHECK(revealed == 50);
    for (std::size_t f = 50; f < code.m(); ++f) {
        for (auto v : code.graph().factor(f)) CHECK((v >= 20 && v < 70));
    }
    for (std::size_t v = 100; v < 300; ++v) CHECK(code.graph().var_degree(v) == 0);

    layout.hidden_checks = 51;
    CHECK_THROWS_AS(build_binning_ldpc(300, layout, default_compound_distributions().ldpc, 9), construction_error);
}

TEST_CASE("nested compound: the syndrome of u is a function of w")
{
    const CompoundCode cc = build_nested_compound(500, 0.5, 0.0, 1.0, 20, default_compound_distributions(), 3);
    CHECK(cc.ldgm.k() == 250);
    CHECK(cc.ldpc.m() == 230);
    Rng rng(6);
    const BitSequence w = bernoulli_bits(rng, cc.ldgm.k(), 0.5);
    BitSequence u = cc.ldgm.encode(w);
    const BitSequence s = cc.ldpc.syndrome(u);
    // parity outputs carry no syndrome weight
    for (std::size_t j = cc.ldgm.k(); j < cc.n(); ++j) u.flip(j);
    CHECK(cc.ldpc.syndrome(u) == s);
    CHECK_THROWS_AS(build_nested_compound(500, 0.5, 0.0, 0.1, 30, default_compound_distributions(), 3),
                    construction_error);
}
