#pragma once

#include <algorithm>
#include <vector>

namespace binceo {

// Natural-log likelihood ratios log(Pr{0} / Pr{1}); positive favors bit 0.
using LlrSequence = std::vector<double>;

inline constexpr double llr_clamp_bound = 30.0;

constexpr double clamp_llr(double x) noexcept
{
    return std::clamp(x, -llr_clamp_bound, llr_clamp_bound);
}

} // namespace binceo
