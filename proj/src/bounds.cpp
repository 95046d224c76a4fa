#include "binceo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "binceo/error.hpp"
#include "binceo/oracles.hpp"

namespace binceo {

TestChannelPair::TestChannelPair(Prob d1_, Prob d2_) : d1(d1_), d2(d2_)
{
    require_crossover(d1, "d1");
    require_crossover(d2, "d2");
}

double point_to_point_rate(Prob d)
{
    require_crossover(d, "d");
    return 1.0 - binary_entropy(d);
}

RegionPoint bsc_bounds(Prob p1, Prob p2, const TestChannelPair& tc)
{
    require_crossover(p1, "p1");
    require_crossover(p2, "p2");
    const Prob p = binary_convolution(p1, p2);
    const Prob d = binary_convolution(tc.d1, tc.d2);
    const double h_pd = binary_entropy(binary_convolution(p, d));
    const double h_d1 = binary_entropy(tc.d1);
    const double h_d2 = binary_entropy(tc.d2);

    RegionPoint out;
    out.r1 = h_pd - h_d1;
    out.r2 = h_pd - h_d2;
    out.sum_rate = 1.0 + h_pd - h_d1 - h_d2;
    out.distortion = binary_entropy(binary_convolution(p1, tc.d1)) + binary_entropy(binary_convolution(p2, tc.d2)) - h_pd;
    return out;
}

RegionPoint mi_region_oracle(Prob p1, Prob p2, const TestChannelPair& tc)
{
    using namespace oracles;
    require_crossover(p1, "p1");
    require_crossover(p2, "p2");
    const JointPmf pmf = enumerate_joint(p1, p2, tc.d1, tc.d2);
    constexpr unsigned y1 = mask_of({var_y1});
    constexpr unsigned y2 = mask_of({var_y2});
    constexpr unsigned u1 = mask_of({var_u1});
    constexpr unsigned u2 = mask_of({var_u2});
    constexpr unsigned x = mask_of({var_x});

    RegionPoint out;
    out.r1 = conditional_mutual_information(pmf, y1, u1, u2);
    out.r2 = conditional_mutual_information(pmf, y2, u2, u1);
    out.sum_rate = mutual_information(pmf, y1 | y2, u1 | u2);
    out.distortion = conditional_entropy(pmf, x, u1 | u2);
    return out;
}

double max_sum_rate(Prob p1, Prob p2)
{
    return 1.0 + binary_entropy(binary_convolution(p1, p2));
}

namespace {

double sum_rate_at(Prob p1, Prob p2, double d1, double d2)
{
    return bsc_bounds(p1, p2, TestChannelPair(d1, d2)).sum_rate;
}

double distortion_at(Prob p1, Prob p2, double d1, double d2)
{
    return bsc_bounds(p1, p2, TestChannelPair(d1, d2)).distortion;
}

} // namespace

double solve_d2_on_constraint(Prob p1, Prob p2, double d1, double target)
{
    // sum_rate is non-increasing in d2 on [0, 0.5]
    double lo = 0.0;
    double hi = 0.5;
    const double r_lo = sum_rate_at(p1, p2, d1, lo);
    const double r_hi = sum_rate_at(p1, p2, d1, hi);
    if (target > r_lo || target < r_hi) return -1.0;
    if (target == r_lo) return lo;
    if (target == r_hi) return hi;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sum_rate_at(p1, p2, d1, mid) >= target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

OptimumResult optimize_test_channels(Prob p1, Prob p2, double target, const OptimizerOptions& options)
{
    require_crossover(p1, "p1");
    require_crossover(p2, "p2");
    const double r_max = max_sum_rate(p1, p2);
    if (!(target > 0.0) || target > 2.0 || target > r_max + 1e-12) {
        throw infeasible_error("sum-rate " + std::to_string(target) + " outside (0, " + std::to_string(r_max) + "]");
    }
    target = std::min(target, r_max);

    constexpr double inf = std::numeric_limits<double>::infinity();
    auto curve = [&](double d1) {
        const double d2 = solve_d2_on_constraint(p1, p2, d1, target);
        return d2 < 0.0 ? inf : distortion_at(p1, p2, d1, d2);
    };

    const int steps = static_cast<int>(std::llround(0.5 / options.grid_step));
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    std::vector<double> values(grid.size());
    for (int i = 0; i <= steps; ++i) {
        grid[static_cast<std::size_t>(i)] = std::min(0.5, i * options.grid_step);
        values[static_cast<std::size_t>(i)] = curve(grid[static_cast<std::size_t>(i)]);
    }
    if (std::none_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        // the feasible slice may be narrower than one grid step (target near r_max)
        grid.assign(1, 0.0);
        values.assign(1, curve(0.0));
        if (!std::isfinite(values[0])) throw infeasible_error("no test-channel pair attains the sum-rate");
    }

    struct Candidate {
        double d1;
        double distortion;
    };
    std::vector<Candidate> minima;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(values[i])) continue;
        const bool left_ok = i == 0 || !(values[i - 1] < values[i]);
        const bool right_ok = i + 1 == grid.size() || !(values[i + 1] < values[i]);
        if (!left_ok || !right_ok) continue;

        // golden-section refinement on the bracket around the grid minimum
        double a = i == 0 ? grid[i] : grid[i - 1];
        double b = i + 1 == grid.size() ? grid[i] : grid[i + 1];
        double c = b - golden * (b - a);
        double d = a + golden * (b - a);
        double fc = curve(c);
        double fd = curve(d);
        while (b - a > options.width_tolerance) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - golden * (b - a);
                fc = curve(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + golden * (b - a);
                fd = curve(d);
            }
        }
        Candidate best{grid[i], values[i]};
        for (double probe : {a, b, 0.5 * (a + b)}) {
            const double v = curve(probe);
            if (v < best.distortion) best = {probe, v};
        }
        minima.push_back(best);
    }

    std::stable_sort(minima.begin(), minima.end(),
                     [](const Candidate& x, const Candidate& y) { return x.distortion < y.distortion; });

    OptimumResult out;
    for (const auto& m : minima) {
        const double d2 = solve_d2_on_constraint(p1, p2, m.d1, target);
        out.local_minima.emplace_back(m.d1, d2);
    }
    out.pair = out.local_minima.front();
    const RegionPoint at = bsc_bounds(p1, p2, out.pair);
    out.distortion = at.distortion;
    out.achieved_sum_rate = at.sum_rate;
    if (std::abs(out.achieved_sum_rate - target) > options.rate_tolerance) {
        throw infeasible_error("constraint not met within tolerance");
    }
    return out;
}

std::vector<BoundCurvePoint> sweep_bound_curve(Prob p1, Prob p2, std::span<const double> rate_grid,
                                               const OptimizerOptions& options)
{
    std::vector<BoundCurvePoint> out;
    out.reserve(rate_grid.size());
    for (double rate : rate_grid) {
        const OptimumResult opt = optimize_test_channels(p1, p2, rate, options);
        out.push_back({rate, opt.distortion, opt.pair});
    }
    return out;
}

} // namespace binceo
