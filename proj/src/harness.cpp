#include "binceo/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "binceo/codec.hpp"
#include "binceo/decoders.hpp"
#include "binceo/error.hpp"
#include "binceo/rng.hpp"

namespace binceo {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value)
{
    double v = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw domain_error(key + ": expected a number, got '" + value + "'");
    }
    return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value)
{
    std::uint64_t v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw domain_error(key + ": expected a non-negative integer, got '" + value + "'");
    }
    return v;
}

std::size_t to_size(const std::string& key, const std::string& value)
{
    return static_cast<std::size_t>(to_u64(key, value));
}

Prob to_prob(const std::string& key, const std::string& value)
{
    const double v = to_double(key, value);
    if (!(v >= 0.0 && v <= 0.5)) throw domain_error(key + " must lie in [0, 0.5], got '" + value + "'");
    return v;
}

std::vector<DegreeFraction> to_degrees(const std::string& key, const std::string& value)
{
    try {
        return parse_degree_list(value);
    } catch (const construction_error& e) {
        throw domain_error(key + ": " + e.what());
    }
}

std::string num(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

const char* selection_name(SchemeSelection s) noexcept
{
    switch (s) {
    case SchemeSelection::joint: return "joint";
    case SchemeSelection::successive: return "successive";
    case SchemeSelection::both: return "both";
    }
    return "both";
}

SchemeSelection parse_selection(const std::string& name)
{
    if (name == "joint") return SchemeSelection::joint;
    if (name == "successive") return SchemeSelection::successive;
    if (name == "both") return SchemeSelection::both;
    throw domain_error("scheme must be joint, successive or both, got '" + name + "'");
}

void ExperimentConfig::validate() const
{
    require_crossover(p1, "p1");
    require_crossover(p2, "p2");
    if (!(test_channels.d1 < 0.5) || !(test_channels.d2 < 0.5)) {
        throw domain_error("test channels must be below 0.5 (an LDGM quantizer needs a positive rate)");
    }
    if (n < 100) throw domain_error("n must be >= 100");
    if (trials < 1) throw domain_error("trials must be >= 1");
    if (biasprop_sweeps < 1 || sp_iters < 1 || jsp_local < 1 || jsp_global < 1) {
        throw domain_error("iteration budgets must be >= 1");
    }
    if (!(decimation_fraction > 0.0 && decimation_fraction <= 1.0)) {
        throw domain_error("decimation_fraction must lie in (0, 1]");
    }
    if (!(ldgm_margin > -1.0)) throw domain_error("ldgm_margin must be > -1");
    for (double m : {joint_syndrome_margin, successive_syndrome_margin}) {
        if (!(m >= 0.0 && m <= 1.0)) throw domain_error("syndrome margins must lie in [0, 1]");
    }
    if (!(joint_split >= 0.0 && joint_split <= 1.0)) throw domain_error("joint_split must lie in [0, 1]");
    try {
        distributions.ldgm.validate();
        distributions.ldpc.validate();
    } catch (const construction_error& e) {
        throw domain_error(std::string("degree distribution: ") + e.what());
    }
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value)
{
    if (key == "p1") c.p1 = to_prob(key, value);
    else if (key == "p2") c.p2 = to_prob(key, value);
    else if (key == "d1") c.test_channels.d1 = to_prob(key, value);
    else if (key == "d2") c.test_channels.d2 = to_prob(key, value);
    else if (key == "n") c.n = to_size(key, value);
    else if (key == "scheme") c.scheme = parse_selection(value);
    else if (key == "trials") c.trials = to_size(key, value);
    else if (key == "seed") c.base_seed = to_u64(key, value);
    else if (key == "biasprop_sweeps") c.biasprop_sweeps = to_size(key, value);
    else if (key == "decimation_fraction") c.decimation_fraction = to_double(key, value);
    else if (key == "sp_iters") c.sp_iters = to_size(key, value);
    else if (key == "jsp_local") c.jsp_local = to_size(key, value);
    else if (key == "jsp_global") c.jsp_global = to_size(key, value);
    else if (key == "ldgm_margin") c.ldgm_margin = to_double(key, value);
    else if (key == "syndrome_margin") c.joint_syndrome_margin = c.successive_syndrome_margin = to_double(key, value);
    else if (key == "joint_syndrome_margin") c.joint_syndrome_margin = to_double(key, value);
    else if (key == "successive_syndrome_margin") c.successive_syndrome_margin = to_double(key, value);
    else if (key == "joint_split") c.joint_split = to_double(key, value);
    else if (key == "ldgm_parity_degrees") c.distributions.ldgm.factor = to_degrees(key, value);
    else if (key == "ldgm_info_degrees") c.distributions.ldgm.variable = to_degrees(key, value);
    else if (key == "ldpc_bit_degrees") c.distributions.ldpc.variable = to_degrees(key, value);
    else if (key == "ldpc_check_degrees") c.distributions.ldpc.factor = to_degrees(key, value);
    else if (key == "output") c.output = value;
    else throw domain_error("unknown configuration key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw domain_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base)
{
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

std::string write_config(const ExperimentConfig& c)
{
    std::ostringstream out;
    out << "p1 = " << num(c.p1) << '\n'
        << "p2 = " << num(c.p2) << '\n'
        << "d1 = " << num(c.test_channels.d1) << '\n'
        << "d2 = " << num(c.test_channels.d2) << '\n'
        << "n = " << c.n << '\n'
        << "scheme = " << selection_name(c.scheme) << '\n'
        << "trials = " << c.trials << '\n'
        << "seed = " << c.base_seed << '\n'
        << "biasprop_sweeps = " << c.biasprop_sweeps << '\n'
        << "decimation_fraction = " << num(c.decimation_fraction) << '\n'
        << "sp_iters = " << c.sp_iters << '\n'
        << "jsp_local = " << c.jsp_local << '\n'
        << "jsp_global = " << c.jsp_global << '\n'
        << "ldgm_margin = " << num(c.ldgm_margin) << '\n'
        << "joint_syndrome_margin = " << num(c.joint_syndrome_margin) << '\n'
        << "successive_syndrome_margin = " << num(c.successive_syndrome_margin) << '\n'
        << "joint_split = " << num(c.joint_split) << '\n'
        << "ldgm_parity_degrees = " << format_degree_list(c.distributions.ldgm.factor) << '\n'
        << "ldgm_info_degrees = " << format_degree_list(c.distributions.ldgm.variable) << '\n'
        << "ldpc_bit_degrees = " << format_degree_list(c.distributions.ldpc.variable) << '\n'
        << "ldpc_check_degrees = " << format_degree_list(c.distributions.ldpc.factor) << '\n';
    if (!c.output.empty()) out << "output = " << c.output << '\n';
    return out.str();
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial)
{
    return derive_seed(base_seed, "trial", trial);
}

SchemeGeometry scheme_geometry(const ExperimentConfig& c)
{
    SchemeGeometry g;
    const ChainParams chain(c.test_channels.d1, c.p1, c.p2, c.test_channels.d2);
    g.coupling_crossover = chain_crossover(chain);
    const auto nd = static_cast<double>(c.n);
    const double ideal = nd * (1.0 - binary_entropy(g.coupling_crossover));
    g.link1.ldgm_rate = std::min(1.0, point_to_point_rate(c.test_channels.d1) * (1.0 + c.ldgm_margin));
    g.link2.ldgm_rate = std::min(1.0, point_to_point_rate(c.test_channels.d2) * (1.0 + c.ldgm_margin));
    const auto joint_gain = static_cast<std::size_t>(std::llround((1.0 - c.joint_syndrome_margin) * ideal));
    g.link1.joint_binning_gain = static_cast<std::size_t>(std::llround(c.joint_split * static_cast<double>(joint_gain)));
    g.link2.joint_binning_gain = joint_gain - g.link1.joint_binning_gain;
    g.successive_binning_gain = static_cast<std::size_t>(std::llround((1.0 - c.successive_syndrome_margin) * ideal));
    return g;
}

namespace {

struct SharedTrial {
    std::uint64_t seed = 0;
    SeedRecord seeds;
    BitSequence x;
    BitSequence y1;
    BitSequence y2;
    LdgmCode ldgm1;
    LdgmCode ldgm2;
    QuantizationResult quant1;
    QuantizationResult quant2;
};

RunReport finish(const ExperimentConfig& c, Scheme scheme, const SharedTrial& s, RatePair rates,
                 const BitSequence& u1_hat, const BitSequence& u2_hat, bool ok1, bool ok2)
{
    const ChainParams chain(c.test_channels.d1, c.p1, c.p2, c.test_channels.d2);
    const auto recons = scheme == Scheme::joint ? reconstruct_soft(u1_hat, u2_hat, chain)
                                                : reconstruct_soft_successive(u1_hat, u2_hat, chain);
    RunInputs in;
    in.scheme = scheme;
    in.source = &s.x;
    in.reconstructions = recons;
    in.rates = rates;
    in.test_channels = c.test_channels;
    in.p1 = c.p1;
    in.p2 = c.p2;
    in.u1_hat = &u1_hat;
    in.u1 = &s.quant1.quantized;
    in.u2_hat = &u2_hat;
    in.u2 = &s.quant2.quantized;
    RunReport r = report_run(in);
    r.quant_distortion1 = s.quant1.empirical_distortion;
    r.quant_distortion2 = s.quant2.empirical_distortion;
    r.decoded1 = ok1;
    r.decoded2 = ok2;
    r.seeds = s.seeds;
    return r;
}

} // namespace

std::vector<RunReport> run_trial(const ExperimentConfig& c, std::size_t trial)
{
    c.validate();
    if (c.n > max_block_length) {
        throw capacity_error("block length " + std::to_string(c.n) + " above the supported maximum " +
                             std::to_string(max_block_length));
    }
    const SchemeGeometry geo = scheme_geometry(c);
    const std::size_t n = c.n;

    SharedTrial s;
    s.seed = trial_seed(c.base_seed, trial);
    const std::uint64_t source_seed = derive_seed(s.seed, "source");
    const std::uint64_t noise1_seed = derive_seed(s.seed, "noise", 1);
    const std::uint64_t noise2_seed = derive_seed(s.seed, "noise", 2);
    const std::uint64_t code1_seed = derive_seed(s.seed, "code", 1);
    const std::uint64_t code2_seed = derive_seed(s.seed, "code", 2);
    const std::uint64_t quant_seed = derive_seed(s.seed, "quantize");
    s.seeds = {{"trial", s.seed},   {"source", source_seed}, {"noise1", noise1_seed}, {"noise2", noise2_seed},
               {"code1", code1_seed}, {"code2", code2_seed},  {"quantize", quant_seed}};

    Rng source_rng(source_seed);
    Rng noise1_rng(noise1_seed);
    Rng noise2_rng(noise2_seed);
    s.x = bernoulli_bits(source_rng, n, 0.5);
    s.y1 = s.x ^ bernoulli_bits(noise1_rng, n, c.p1);
    s.y2 = s.x ^ bernoulli_bits(noise2_rng, n, c.p2);

    // the LDGM graphs are shared by both schemes; only the syndrome formers differ
    s.ldgm1 = build_systematic_ldgm(n, geo.link1.ldgm_rate, c.distributions.ldgm, derive_seed(code1_seed, "ldgm"));
    s.ldgm2 = build_systematic_ldgm(n, geo.link2.ldgm_rate, c.distributions.ldgm, derive_seed(code2_seed, "ldgm"));

    QuantizerOptions qopt;
    qopt.max_iters = c.biasprop_sweeps;
    qopt.decimation_fraction = c.decimation_fraction;
    s.quant1 = bias_propagation_quantize(s.ldgm1, s.y1, c.test_channels.d1, derive_seed(quant_seed, "quantize", 1), qopt);
    s.quant2 = bias_propagation_quantize(s.ldgm2, s.y2, c.test_channels.d2, derive_seed(quant_seed, "quantize", 2), qopt);

    const Prob q = geo.coupling_crossover;
    std::vector<RunReport> out;

    if (c.scheme != SchemeSelection::successive) {
        const CompoundCode cc1 = build_nested_compound(n, geo.link1.ldgm_rate, 0.0, c.joint_split,
                                                       geo.link1.joint_binning_gain, c.distributions, code1_seed);
        const CompoundCode cc2 = build_nested_compound(n, geo.link2.ldgm_rate, c.joint_split, 1.0,
                                                       geo.link2.joint_binning_gain, c.distributions, code2_seed);
        EncodedLinkJoint l1{syndrome_generate(cc1.ldpc, s.quant1.quantized)};
        EncodedLinkJoint l2{syndrome_generate(cc2.ldpc, s.quant2.quantized)};
        JointOptions jopt;
        jopt.local_iters = c.jsp_local;
        jopt.global_iters = c.jsp_global;
        const JointDecodeResult dec = compound_joint_decode(cc1, cc2, l1.syndrome, l2.syndrome, q, jopt);
        out.push_back(finish(c, Scheme::joint, s, empirical_rates(l1, l2, n), dec.link1.u_hat, dec.link2.u_hat,
                             dec.link1.syndrome_satisfied, dec.link2.syndrome_satisfied));
        out.back().trial = trial;
    }
    if (c.scheme != SchemeSelection::joint) {
        const CompoundCode cc1 = build_nested_compound(n, geo.link1.ldgm_rate, 0.0, 1.0, geo.successive_binning_gain,
                                                       c.distributions, code1_seed);
        EncodedLinksSuccessive links{syndrome_generate(cc1.ldpc, s.quant1.quantized), s.quant2.info_bits};
        const BitSequence u2 = s.ldgm2.encode(links.info_bits2);
        SumProductOptions sopt;
        sopt.max_iters = c.sp_iters;
        const DecodeResult dec = compound_decode(cc1, links.syndrome1, side_info_prior(u2, q), sopt);
        out.push_back(finish(c, Scheme::successive, s, empirical_rates(links, n), dec.u_hat, u2,
                             dec.syndrome_satisfied, true));
        out.back().trial = trial;
    }
    return out;
}

std::vector<RunReport> run_experiment(const ExperimentConfig& c)
{
    std::vector<RunReport> joint;
    std::vector<RunReport> successive;
    for (std::size_t t = 0; t < c.trials; ++t) {
        for (auto& r : run_trial(c, t)) (r.scheme == Scheme::joint ? joint : successive).push_back(std::move(r));
    }
    joint.insert(joint.end(), successive.begin(), successive.end());
    return joint;
}

void write_simulation_csv(std::ostream& out, std::span<const RunReport> reports)
{
    write_run_csv_header(out);
    for (const auto& r : reports) out << run_csv_row(r) << '\n';
    for (Scheme s : {Scheme::joint, Scheme::successive}) {
        std::vector<RunReport> group;
        for (const auto& r : reports) {
            if (r.scheme == s) group.push_back(r);
        }
        if (!group.empty()) out << summary_csv_row(group) << '\n';
    }
}

std::vector<double> parse_rate_grid(const std::string& text)
{
    std::vector<double> out;
    const std::string t = trim(text);
    if (t.empty()) throw domain_error("empty rate grid");
    const auto first = t.find(':');
    if (first != std::string::npos) {
        const auto second = t.find(':', first + 1);
        if (second == std::string::npos) throw domain_error("rate grid range must be lo:hi:step");
        const double lo = to_double("rate grid", trim(t.substr(0, first)));
        const double hi = to_double("rate grid", trim(t.substr(first + 1, second - first - 1)));
        const double step = to_double("rate grid", trim(t.substr(second + 1)));
        if (!(step > 0.0) || hi < lo) throw domain_error("rate grid needs lo <= hi and step > 0");
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }
    std::stringstream in(t);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double("rate grid", item));
    }
    if (out.empty()) throw domain_error("empty rate grid");
    return out;
}

void write_sweep_csv(std::ostream& out, const ExperimentConfig& c, const SweepOptions& options)
{
    c.validate();
    out << "# schema: " << sweep_csv_schema << '\n' << "series,label,sum_rate,distortion,d1,d2\n";
    for (const auto& pt : sweep_bound_curve(c.p1, c.p2, options.rate_grid)) {
        out << "bound,," << num(pt.rate) << ',' << num(pt.distortion) << ',' << num(pt.pair.d1) << ','
            << num(pt.pair.d2) << '\n';
    }
    if (options.simulate) {
        const auto reports = run_experiment(c);
        for (Scheme s : {Scheme::joint, Scheme::successive}) {
            std::vector<double> rate;
            std::vector<double> loss;
            for (const auto& r : reports) {
                if (r.scheme != s) continue;
                rate.push_back(r.empirical_sum_rate);
                loss.push_back(r.empirical_log_loss);
            }
            if (rate.empty()) continue;
            out << "empirical," << scheme_name(s) << ',' << num(summarize(rate).mean) << ','
                << num(summarize(loss).mean) << ',' << num(c.test_channels.d1) << ',' << num(c.test_channels.d2)
                << '\n';
        }
    }
    if (options.reference_cases) {
        for (auto [d1, d2] : {std::pair{0.01, 0.01}, std::pair{0.1, 0.1}, std::pair{0.1, 0.3}}) {
            const RegionPoint pt = bsc_bounds(c.p1, c.p2, TestChannelPair(d1, d2));
            out << "reference,(" << num(d1) << ' ' << num(d2) << ")," << num(pt.sum_rate) << ','
                << num(pt.distortion) << ',' << num(d1) << ',' << num(d2) << '\n';
        }
    }
}

} // namespace binceo
