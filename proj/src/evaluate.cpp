#include "binceo/evaluate.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "binceo/error.hpp"

namespace binceo {

const char* scheme_name(Scheme s) noexcept
{
    return s == Scheme::joint ? "joint" : "successive";
}

Scheme parse_scheme(const std::string& name)
{
    if (name == "joint") return Scheme::joint;
    if (name == "successive") return Scheme::successive;
    throw domain_error("unknown scheme '" + name + "'");
}

RatePair empirical_rates(const EncodedLinkJoint& link1, const EncodedLinkJoint& link2, std::size_t n)
{
    const auto nd = static_cast<double>(n);
    return {static_cast<double>(link1.syndrome.size()) / nd, static_cast<double>(link2.syndrome.size()) / nd};
}

RatePair empirical_rates(const EncodedLinksSuccessive& links, std::size_t n)
{
    const auto nd = static_cast<double>(n);
    return {static_cast<double>(links.syndrome1.size()) / nd, static_cast<double>(links.info_bits2.size()) / nd};
}

bool RunReport::below_bound() const noexcept
{
    return empirical_log_loss < theoretical.distortion - below_bound_slack;
}

RunReport report_run(const RunInputs& in)
{
    if (!in.source || !in.u1_hat || !in.u1 || !in.u2_hat || !in.u2) {
        throw domain_error("report_run: missing sequence");
    }
    const std::size_t n = in.source->size();
    require_same_length(in.reconstructions.size(), n, "report_run reconstructions");
    require_same_length(in.u1_hat->size(), n, "report_run u1_hat");
    require_same_length(in.u1->size(), n, "report_run u1");
    require_same_length(in.u2_hat->size(), n, "report_run u2_hat");
    require_same_length(in.u2->size(), n, "report_run u2");

    RunReport r;
    r.scheme = in.scheme;
    r.n = n;
    r.empirical_r1 = in.rates.r1;
    r.empirical_r2 = in.rates.r2;
    r.empirical_sum_rate = in.rates.r1 + in.rates.r2;
    r.empirical_log_loss = average_log_loss(in.reconstructions, *in.source);
    r.theoretical = bsc_bounds(in.p1, in.p2, in.test_channels);
    r.sum_rate_gap = r.empirical_sum_rate - r.theoretical.sum_rate;
    r.distortion_gap = r.empirical_log_loss - r.theoretical.distortion;
    r.ber_u1 = hamming_rate(*in.u1_hat, *in.u1);
    r.ber_u2 = hamming_rate(*in.u2_hat, *in.u2);
    return r;
}

SummaryStats summarize(std::span<const double> values)
{
    SummaryStats s;
    if (values.empty()) return s;
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

namespace {

// Shortest text that parses back to the same double.
std::string num(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string num(std::size_t v)
{
    return std::to_string(v);
}

std::string seeds_text(const SeedRecord& seeds)
{
    std::string out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) out += ';';
        out += seeds[i].first + '=' + std::to_string(seeds[i].second);
    }
    return out;
}

const std::vector<std::string> columns = {
    "row_type",       "scheme",        "trial",          "n",
    "r1",             "r2",            "sum_rate",       "log_loss",
    "bound_r1",       "bound_r2",      "bound_sum_rate", "bound_distortion",
    "sum_rate_gap",   "distortion_gap", "combined_gap",  "ber_u1",
    "ber_u2",         "quant_d1",      "quant_d2",       "decoded1",
    "decoded2",       "below_bound",   "seeds",          "std_sum_rate",
    "std_log_loss",   "std_sum_rate_gap", "std_distortion_gap", "std_combined_gap",
};

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::stringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw domain_error("malformed number '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s)
{
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw domain_error("malformed integer '" + s + "'");
    return v;
}

bool parse_flag(const std::string& s)
{
    if (s == "1") return true;
    if (s == "0") return false;
    throw domain_error("malformed flag '" + s + "'");
}

} // namespace

const std::vector<std::string>& run_csv_columns()
{
    return columns;
}

void write_run_csv_header(std::ostream& out)
{
    out << "# schema: " << run_csv_schema << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
}

std::string run_csv_row(const RunReport& r)
{
    const std::vector<std::string> fields = {
        "trial",
        scheme_name(r.scheme),
        num(r.trial),
        num(r.n),
        num(r.empirical_r1),
        num(r.empirical_r2),
        num(r.empirical_sum_rate),
        num(r.empirical_log_loss),
        num(r.theoretical.r1),
        num(r.theoretical.r2),
        num(r.theoretical.sum_rate),
        num(r.theoretical.distortion),
        num(r.sum_rate_gap),
        num(r.distortion_gap),
        num(r.combined_gap()),
        num(r.ber_u1),
        num(r.ber_u2),
        num(r.quant_distortion1),
        num(r.quant_distortion2),
        r.decoded1 ? "1" : "0",
        r.decoded2 ? "1" : "0",
        r.below_bound() ? "1" : "0",
        seeds_text(r.seeds),
        "", "", "", "", "",
    };
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
    return out;
}

std::string summary_csv_row(std::span<const RunReport> reports)
{
    if (reports.empty()) throw domain_error("summary_csv_row: no reports");
    auto stat = [&](auto field) {
        std::vector<double> v;
        v.reserve(reports.size());
        for (const auto& r : reports) v.push_back(field(r));
        return summarize(v);
    };
    const auto& first = reports.front();
    const auto sum_rate = stat([](const RunReport& r) { return r.empirical_sum_rate; });
    const auto loss = stat([](const RunReport& r) { return r.empirical_log_loss; });
    const auto rgap = stat([](const RunReport& r) { return r.sum_rate_gap; });
    const auto dgap = stat([](const RunReport& r) { return r.distortion_gap; });
    const auto cgap = stat([](const RunReport& r) { return r.combined_gap(); });
    const auto decoded1 = stat([](const RunReport& r) { return r.decoded1 ? 1.0 : 0.0; });
    const auto decoded2 = stat([](const RunReport& r) { return r.decoded2 ? 1.0 : 0.0; });
    const auto below = stat([](const RunReport& r) { return r.below_bound() ? 1.0 : 0.0; });

    const std::vector<std::string> fields = {
        "summary",
        scheme_name(first.scheme),
        num(reports.size()),
        num(first.n),
        num(stat([](const RunReport& r) { return r.empirical_r1; }).mean),
        num(stat([](const RunReport& r) { return r.empirical_r2; }).mean),
        num(sum_rate.mean),
        num(loss.mean),
        num(first.theoretical.r1),
        num(first.theoretical.r2),
        num(first.theoretical.sum_rate),
        num(first.theoretical.distortion),
        num(rgap.mean),
        num(dgap.mean),
        num(cgap.mean),
        num(stat([](const RunReport& r) { return r.ber_u1; }).mean),
        num(stat([](const RunReport& r) { return r.ber_u2; }).mean),
        num(stat([](const RunReport& r) { return r.quant_distortion1; }).mean),
        num(stat([](const RunReport& r) { return r.quant_distortion2; }).mean),
        num(decoded1.mean),
        num(decoded2.mean),
        num(below.mean),
        "",
        num(sum_rate.stddev),
        num(loss.stddev),
        num(rgap.stddev),
        num(dgap.stddev),
        num(cgap.stddev),
    };
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
    return out;
}

RunReport parse_run_csv_row(const std::string& line)
{
    const auto f = split(line, ',');
    if (f.size() != columns.size()) {
        throw domain_error("run row has " + std::to_string(f.size()) + " fields, expected " +
                           std::to_string(columns.size()));
    }
    if (f[0] != "trial") throw domain_error("not a trial row: '" + f[0] + "'");
    RunReport r;
    r.scheme = parse_scheme(f[1]);
    r.trial = static_cast<std::size_t>(parse_u64(f[2]));
    r.n = static_cast<std::size_t>(parse_u64(f[3]));
    r.empirical_r1 = parse_double(f[4]);
    r.empirical_r2 = parse_double(f[5]);
    r.empirical_sum_rate = parse_double(f[6]);
    r.empirical_log_loss = parse_double(f[7]);
    r.theoretical.r1 = parse_double(f[8]);
    r.theoretical.r2 = parse_double(f[9]);
    r.theoretical.sum_rate = parse_double(f[10]);
    r.theoretical.distortion = parse_double(f[11]);
    r.sum_rate_gap = parse_double(f[12]);
    r.distortion_gap = parse_double(f[13]);
    r.ber_u1 = parse_double(f[15]);
    r.ber_u2 = parse_double(f[16]);
    r.quant_distortion1 = parse_double(f[17]);
    r.quant_distortion2 = parse_double(f[18]);
    r.decoded1 = parse_flag(f[19]);
    r.decoded2 = parse_flag(f[20]);
    if (!f[22].empty()) {
        for (const auto& item : split(f[22], ';')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw domain_error("malformed seed entry '" + item + "'");
            r.seeds.emplace_back(item.substr(0, eq), parse_u64(item.substr(eq + 1)));
        }
    }
    return r;
}

std::string format_report(const RunReport& r)
{
    char buf[1024];
    std::snprintf(buf, sizeof buf,
                  "scheme %s, trial %zu, n = %zu\n"
                  "  rates      r1 %.4f  r2 %.4f  sum %.4f   (bound %.4f, gap %+.4f)\n"
                  "  log-loss   %.4f bits   (bound %.4f, gap %+.4f)%s\n"
                  "  decoding   link1 %s (BER %.2e)  link2 %s (BER %.2e)\n"
                  "  quantizer  d1 %.4f  d2 %.4f\n",
                  scheme_name(r.scheme), r.trial, r.n, r.empirical_r1, r.empirical_r2, r.empirical_sum_rate,
                  r.theoretical.sum_rate, r.sum_rate_gap, r.empirical_log_loss, r.theoretical.distortion,
                  r.distortion_gap, r.below_bound() ? "  [below bound]" : "", r.decoded1 ? "ok" : "failed",
                  r.ber_u1, r.decoded2 ? "ok" : "failed", r.ber_u2, r.quant_distortion1, r.quant_distortion2);
    return buf;
}

} // namespace binceo
