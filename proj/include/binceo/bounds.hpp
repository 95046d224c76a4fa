#pragma once

// Rate-distortion bounds of the two-link binary CEO problem under log-loss
// with BSC test channels, plus the constrained choice of test channels that
// minimizes distortion at a given sum-rate.

#include <span>
#include <vector>

#include "binceo/binmath.hpp"

namespace binceo {

struct TestChannelPair {
    Prob d1;
    Prob d2;

    TestChannelPair() = default;
    TestChannelPair(Prob d1_, Prob d2_);
};

// Three separate lower bounds (r1, r2, sum_rate) and the distortion bound, in bits.
struct RegionPoint {
    double r1 = 0.0;
    double r2 = 0.0;
    double sum_rate = 0.0;
    double distortion = 0.0;

    friend bool operator==(const RegionPoint&, const RegionPoint&) = default;
};

double point_to_point_rate(Prob d);

// Closed form: with p = p1*p2 and d = d1*d2,
//   r1 = h(p*d) - h(d1), r2 = h(p*d) - h(d2),
//   sum = 1 + h(p*d) - h(d1) - h(d2), D = h(p1*d1) + h(p2*d2) - h(p*d).
RegionPoint bsc_bounds(Prob p1, Prob p2, const TestChannelPair& tc);

// Same four quantities from direct summation over the exact joint pmf:
// I(Y1;U1|U2), I(Y2;U2|U1), I(Y1,Y2;U1,U2), H(X|U1,U2).
RegionPoint mi_region_oracle(Prob p1, Prob p2, const TestChannelPair& tc);

struct OptimizerOptions {
    double grid_step = 0.005;
    double rate_tolerance = 1e-6;
    double width_tolerance = 1e-9;
};

struct OptimumResult {
    TestChannelPair pair;
    double distortion = 0.0;
    double achieved_sum_rate = 0.0;
    // every refined local minimum along the constraint curve, best first
    std::vector<TestChannelPair> local_minima;
};

// Largest sum-rate any pair attains: 1 + h(p1*p2), at d1 = d2 = 0.
double max_sum_rate(Prob p1, Prob p2);

// For d1 fixed, the d2 in [0, 0.5] with sum_rate(d1, d2) = target, or a
// negative value when this slice of the constraint is empty.
double solve_d2_on_constraint(Prob p1, Prob p2, double d1, double target_sum_rate);

// Minimizes the closed-form distortion over pairs with sum_rate = target.
// Throws infeasible_error when no pair in [0, 0.5]^2 reaches the target.
OptimumResult optimize_test_channels(Prob p1, Prob p2, double target_sum_rate,
                                     const OptimizerOptions& options = {});

struct BoundCurvePoint {
    double rate = 0.0;
    double distortion = 0.0;
    TestChannelPair pair;
};

std::vector<BoundCurvePoint> sweep_bound_curve(Prob p1, Prob p2, std::span<const double> rate_grid,
                                               const OptimizerOptions& options = {});

} // namespace binceo
