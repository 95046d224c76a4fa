#pragma once

// Experiment configuration, seeded trial orchestration, and the CSV emitters
// behind the command-line tool.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "binceo/binmath.hpp"
#include "binceo/bounds.hpp"
#include "binceo/evaluate.hpp"
#include "binceo/graphs.hpp"

namespace binceo {

enum class SchemeSelection { joint, successive, both };

struct ExperimentConfig {
    Prob p1 = 0.15;
    Prob p2 = 0.15;
    TestChannelPair test_channels{0.1, 0.1};
    std::size_t n = 10000;
    SchemeSelection scheme = SchemeSelection::both;
    std::size_t trials = 10;
    std::uint64_t base_seed = 1;

    // iteration budgets
    std::size_t biasprop_sweeps = 25;
    double decimation_fraction = 0.01;
    std::size_t sp_iters = 100;
    std::size_t jsp_local = 40;
    std::size_t jsp_global = 15;

    // ldgm_rate_i = (1 - h_b(d_i)) (1 + ldgm_margin)
    double ldgm_margin = 0.02;
    // binning gain = (1 - margin) n (1 - h_b(q)), q = d1*p1*p2*d2, with one
    // margin per scheme; the key "syndrome_margin" sets both
    double joint_syndrome_margin = 0.5;
    double successive_syndrome_margin = 0.55;
    // share of the binning gain taken by link 1 in the joint scheme
    double joint_split = 0.5;

    CompoundDistributions distributions = default_compound_distributions();

    std::string output; // empty: standard output

    // Throws domain_error on any invalid field.
    void validate() const;
};

inline constexpr std::size_t max_block_length = 10'000'000;

// Applies one "key = value" setting; throws domain_error on an unknown key or
// a malformed value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

// Flat "key = value" text, '#' starts a comment.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
// Canonical key = value dump; parse_config(write_config(c)) reproduces c.
std::string write_config(const ExperimentConfig& config);

const char* selection_name(SchemeSelection s) noexcept;
SchemeSelection parse_selection(const std::string& name);

// Trial seed, then per-component seeds from it with fixed tags.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

// Code geometry implied by a configuration.
struct LinkGeometry {
    double ldgm_rate = 0.0;
    // this link's share of the joint scheme's binning gain
    std::size_t joint_binning_gain = 0;
};

struct SchemeGeometry {
    LinkGeometry link1;
    LinkGeometry link2;
    double coupling_crossover = 0.0;
    // all on link 1, whose bits are decoded against u2
    std::size_t successive_binning_gain = 0;
};

SchemeGeometry scheme_geometry(const ExperimentConfig& config);

// One trial of every selected scheme on shared source, noise, LDGM codes and
// quantizations: reports in the order joint, successive.
std::vector<RunReport> run_trial(const ExperimentConfig& config, std::size_t trial);

// All trials; rows grouped by scheme (joint first), trials in order.
std::vector<RunReport> run_experiment(const ExperimentConfig& config);

// Header, trial rows, then one summary row per scheme.
void write_simulation_csv(std::ostream& out, std::span<const RunReport> reports);

struct SweepOptions {
    std::vector<double> rate_grid;
    bool reference_cases = false;
    bool simulate = true;
};

// Rate grid "lo:hi:step" or a comma list.
std::vector<double> parse_rate_grid(const std::string& text);

// Bound curve rows, then empirical mean points of the selected schemes, then
// (optionally) the three annotated reference pairs.
void write_sweep_csv(std::ostream& out, const ExperimentConfig& config, const SweepOptions& options);

inline constexpr const char* sweep_csv_schema = "binceo-sweep v1";

} // namespace binceo
