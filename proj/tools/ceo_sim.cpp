// ceo_sim: bounds, test-channel optimization and Monte Carlo simulation for
// the two-link binary CEO problem under log-loss.
//
// Exit codes: 0 success, 2 configuration/validation, 3 infeasible
// optimization, 4 capacity/runtime.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "binceo/bounds.hpp"
#include "binceo/error.hpp"
#include "binceo/harness.hpp"
#include "binceo/simd/kernels.hpp"

namespace {

using binceo::ExperimentConfig;

constexpr int exit_config = 2;
constexpr int exit_infeasible = 3;
constexpr int exit_capacity = 4;

// Flags shared by simulate and sweep; each one set overrides the config file.
struct ConfigFlags {
    std::string config_path;
    std::map<std::string, std::string> values;

    void add(CLI::App* app)
    {
        app->add_option("--config", config_path, "key = value configuration file");
        const char* keys[][2] = {
            {"p1", "crossover of link 1's observation channel"},
            {"p2", "crossover of link 2's observation channel"},
            {"d1", "link 1 test-channel crossover"},
            {"d2", "link 2 test-channel crossover"},
            {"n", "block length"},
            {"scheme", "joint, successive or both"},
            {"trials", "number of trials"},
            {"seed", "base seed"},
            {"biasprop-sweeps", "message rounds per decimation step"},
            {"decimation-fraction", "fraction of information bits fixed per step"},
            {"sp-iters", "sum-product iterations (successive)"},
            {"jsp-local", "local iterations per global iteration (joint)"},
            {"jsp-global", "global iterations (joint)"},
            {"ldgm-margin", "relative LDGM rate excess over 1 - h(d)"},
            {"syndrome-margin", "fraction of the ideal binning gain left unused (both schemes)"},
            {"joint-syndrome-margin", "syndrome margin of the joint scheme"},
            {"successive-syndrome-margin", "syndrome margin of the successive scheme"},
            {"joint-split", "share of the binning gain on link 1 (joint)"},
            {"ldgm-parity-degrees", "LDGM parity-output degrees, e.g. 6:1"},
            {"ldgm-info-degrees", "LDGM information-bit degrees (empty: balanced)"},
            {"ldpc-bit-degrees", "binning-check degrees of hidden bits, e.g. 2:1"},
            {"ldpc-check-degrees", "binning check degrees (empty: balanced)"},
        };
        for (const auto& [flag, help] : keys) {
            std::string key = flag;
            for (auto& ch : key) ch = ch == '-' ? '_' : ch;
            app->add_option_function<std::string>(
                std::string("--") + flag, [this, key](const std::string& v) { values[key] = v; }, help);
        }
    }

    ExperimentConfig resolve() const
    {
        ExperimentConfig c;
        if (!config_path.empty()) c = binceo::load_config(config_path);
        for (const auto& [k, v] : values) binceo::apply_setting(c, k, v);
        c.validate();
        return c;
    }
};

void print_bounds(double p1, double p2, double d1, double d2)
{
    const binceo::TestChannelPair tc(d1, d2);
    const auto closed = binceo::bsc_bounds(p1, p2, tc);
    const auto oracle = binceo::mi_region_oracle(p1, p2, tc);
    std::printf("p1 = %g  p2 = %g  d1 = %g  d2 = %g\n\n", p1, p2, d1, d2);
    std::printf("%-12s %14s %14s %10s\n", "", "closed form", "enumeration", "|diff|");
    auto row = [](const char* name, double a, double b) {
        std::printf("%-12s %14.9f %14.9f %10.2e\n", name, a, b, std::abs(a - b));
    };
    row("r1", closed.r1, oracle.r1);
    row("r2", closed.r2, oracle.r2);
    row("sum-rate", closed.sum_rate, oracle.sum_rate);
    row("distortion", closed.distortion, oracle.distortion);
}

void print_optimum(double p1, double p2, double rate, const binceo::OptimumResult& r)
{
    std::printf("p1 = %g  p2 = %g  target sum-rate = %.9f\n\n", p1, p2, rate);
    std::printf("optimal (d1, d2)   (%.6f, %.6f)\n", static_cast<double>(r.pair.d1), static_cast<double>(r.pair.d2));
    std::printf("distortion         %.9f bits\n", r.distortion);
    std::printf("achieved sum-rate  %.9f bits\n", r.achieved_sum_rate);
    std::printf("local minima       %zu\n", r.local_minima.size());
    for (const auto& m : r.local_minima) {
        const auto pt = binceo::bsc_bounds(p1, p2, m);
        std::printf("  (%.6f, %.6f)  distortion %.9f\n", static_cast<double>(m.d1), static_cast<double>(m.d2),
                    pt.distortion);
    }
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn)
{
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw binceo::domain_error("cannot open output file '" + path + "'");
    fn(out);
    if (!out) throw binceo::capacity_error("write to '" + path + "' failed");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-link binary CEO problem under log-loss: bounds and compound-code simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ceo_sim 0.1.0");

    double p1 = 0.15, p2 = 0.15, d1 = 0.1, d2 = 0.1;
    auto* bounds = app.add_subcommand("bounds", "closed-form and enumerated region point for BSC test channels");
    bounds->add_option("--p1", p1, "crossover of link 1's observation channel")->capture_default_str();
    bounds->add_option("--p2", p2, "crossover of link 2's observation channel")->capture_default_str();
    bounds->add_option("--d1", d1, "link 1 test-channel crossover")->capture_default_str();
    bounds->add_option("--d2", d2, "link 2 test-channel crossover")->capture_default_str();

    std::optional<double> target;
    std::vector<double> from_pair;
    double grid_step = 0.005;
    auto* optimize = app.add_subcommand("optimize", "minimum-distortion test channels at a given sum-rate");
    optimize->add_option("--p1", p1)->capture_default_str();
    optimize->add_option("--p2", p2)->capture_default_str();
    auto* rate_opt = optimize->add_option("--rate", target, "target sum-rate in bits");
    optimize->add_option("--from-pair", from_pair, "use the sum-rate implied by this (d1, d2) pair")
        ->expected(2)
        ->excludes(rate_opt);
    optimize->add_option("--grid-step", grid_step, "d1 grid step before refinement")->capture_default_str();

    ConfigFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs of the joint and/or successive scheme");
    sim_flags.add(simulate);
    std::string sim_output;
    bool text = false;
    simulate->add_option("-o,--output", sim_output, "CSV destination (default: config 'output' or stdout)");
    simulate->add_flag("--text", text, "print a readable block per trial to stderr");

    ConfigFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "bound curve plus empirical points, plot-ready CSV");
    sweep_flags.add(sweep);
    std::string rates = "0.6:1.6:0.1";
    std::string sweep_output;
    bool reference_cases = false;
    bool no_simulate = false;
    sweep->add_option("--rates", rates, "sum-rate grid, lo:hi:step or a comma list")->capture_default_str();
    sweep->add_option("-o,--output", sweep_output, "CSV destination (default: stdout)");
    sweep->add_flag("--reference-cases", reference_cases, "append the (0.01,0.01), (0.1,0.1), (0.1,0.3) reference rows");
    sweep->add_flag("--no-simulate", no_simulate, "bound curve only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*bounds) {
            print_bounds(p1, p2, d1, d2);
        } else if (*optimize) {
            double rate = 0.0;
            if (!from_pair.empty()) {
                rate = binceo::bsc_bounds(p1, p2, binceo::TestChannelPair(from_pair[0], from_pair[1])).sum_rate;
            } else if (target) {
                rate = *target;
            } else {
                throw binceo::domain_error("optimize needs --rate or --from-pair");
            }
            binceo::OptimizerOptions opt;
            opt.grid_step = grid_step;
            if (!(grid_step > 0.0 && grid_step <= 0.5)) throw binceo::domain_error("grid step must lie in (0, 0.5]");
            print_optimum(p1, p2, rate, binceo::optimize_test_channels(p1, p2, rate, opt));
        } else if (*simulate) {
            const ExperimentConfig c = sim_flags.resolve();
            const auto reports = binceo::run_experiment(c);
            if (text) {
                for (const auto& r : reports) std::cerr << binceo::format_report(r);
            }
            with_output(sim_output.empty() ? c.output : sim_output,
                        [&](std::ostream& out) { binceo::write_simulation_csv(out, reports); });
        } else if (*sweep) {
            const ExperimentConfig c = sweep_flags.resolve();
            binceo::SweepOptions so;
            so.rate_grid = binceo::parse_rate_grid(rates);
            so.reference_cases = reference_cases;
            so.simulate = !no_simulate;
            with_output(sweep_output, [&](std::ostream& out) { binceo::write_sweep_csv(out, c, so); });
        }
    } catch (const binceo::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const binceo::capacity_error& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return exit_capacity;
    } catch (const std::bad_alloc&) {
        std::cerr << "capacity: out of memory\n";
        return exit_capacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const binceo::construction_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "runtime: " << e.what() << '\n';
        return exit_capacity;
    }
    return 0;
}
