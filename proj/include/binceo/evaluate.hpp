#pragma once

// Empirical rate/distortion bookkeeping for finished runs, gap-to-bound
// computation, and the flat CSV / text serializations of a run.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binceo/binmath.hpp"
#include "binceo/bits.hpp"
#include "binceo/bounds.hpp"
#include "binceo/codec.hpp"

namespace binceo {

enum class Scheme { joint, successive };

const char* scheme_name(Scheme s) noexcept;
// Throws domain_error on an unknown name.
Scheme parse_scheme(const std::string& name);

struct RatePair {
    double r1 = 0.0;
    double r2 = 0.0;
};

// Joint: (m1 / n, m2 / n). Successive: (m1 / n, k2 / n).
RatePair empirical_rates(const EncodedLinkJoint& link1, const EncodedLinkJoint& link2, std::size_t n);
RatePair empirical_rates(const EncodedLinksSuccessive& links, std::size_t n);

// Every RNG seed a trial consumed, tagged by component.
using SeedRecord = std::vector<std::pair<std::string, std::uint64_t>>;

struct RunReport {
    Scheme scheme = Scheme::joint;
    std::size_t trial = 0;
    std::size_t n = 0;
    double empirical_r1 = 0.0;
    double empirical_r2 = 0.0;
    double empirical_sum_rate = 0.0;
    double empirical_log_loss = 0.0;
    RegionPoint theoretical;
    double sum_rate_gap = 0.0;
    double distortion_gap = 0.0;
    double ber_u1 = 0.0;
    double ber_u2 = 0.0;
    // diagnostics
    double quant_distortion1 = 0.0;
    double quant_distortion2 = 0.0;
    bool decoded1 = false;
    bool decoded2 = false;
    SeedRecord seeds;

    // sum_rate_gap + distortion_gap: one number for ordering two points
    // measured against the same bound point.
    double combined_gap() const noexcept { return sum_rate_gap + distortion_gap; }
    // Empirical log-loss more than `below_bound_slack` under the bound.
    bool below_bound() const noexcept;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline constexpr double below_bound_slack = 0.01;

struct RunInputs {
    Scheme scheme = Scheme::joint;
    const BitSequence* source = nullptr;
    std::span<const SoftSymbol> reconstructions;
    RatePair rates;
    TestChannelPair test_channels;
    Prob p1;
    Prob p2;
    const BitSequence* u1_hat = nullptr;
    const BitSequence* u1 = nullptr;
    const BitSequence* u2_hat = nullptr;
    const BitSequence* u2 = nullptr;
};

// Log-loss of the reconstructions, the closed-form bound at the test
// channels, componentwise gaps, and BERs of the decoded quantized words.
// Throws dimension_error on inconsistent lengths.
RunReport report_run(const RunInputs& in);

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation, 0 for a single trial
};

SummaryStats summarize(std::span<const double> values);

// CSV layout: a "# schema: binceo-run v1" line, a column header row, then one
// row per trial ("trial") and one per scheme ("summary": means, with the
// std_* columns holding sample standard deviations).
inline constexpr const char* run_csv_schema = "binceo-run v1";

const std::vector<std::string>& run_csv_columns();
void write_run_csv_header(std::ostream& out);
std::string run_csv_row(const RunReport& report);
std::string summary_csv_row(std::span<const RunReport> reports);
// Inverse of run_csv_row; throws domain_error on malformed input.
RunReport parse_run_csv_row(const std::string& line);

std::string format_report(const RunReport& report);

} // namespace binceo
