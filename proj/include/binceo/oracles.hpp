#pragma once

// Brute-force references for tests and acceptance. Nothing here shares code
// with the message-passing implementations it is used to check.

#include <array>
#include <cstdint>
#include <utility>

#include "binceo/binmath.hpp"
#include "binceo/bits.hpp"
#include "binceo/graphs.hpp"
#include "binceo/llr.hpp"

namespace binceo::oracles {

// Variable positions inside a JointPmf index.
enum JointVar : unsigned { var_x = 0, var_y1 = 1, var_y2 = 2, var_u1 = 3, var_u2 = 4 };

constexpr unsigned mask_of(std::initializer_list<JointVar> vars)
{
    unsigned m = 0;
    for (auto v : vars) m |= 1u << v;
    return m;
}

// Joint law of (X, Y1, Y2, U1, U2) over {0,1}^5; entry i has variable v at bit v of i.
struct JointPmf {
    std::array<double, 32> mass{};

    static constexpr int bit(unsigned index, JointVar v) { return static_cast<int>((index >> v) & 1u); }

    double total() const;
    // Entropy in bits of the marginal over the variables in `mask`.
    double entropy(unsigned mask) const;
    // Pr{all variables in `mask_a` xor to 1}: e.g. Pr{U1 != U2}.
    double prob_parity_odd(unsigned mask) const;
};

JointPmf enumerate_joint(Prob p1, Prob p2, Prob d1, Prob d2);

// Information quantities read directly off the pmf.
double mutual_information(const JointPmf& pmf, unsigned a, unsigned b);
double conditional_mutual_information(const JointPmf& pmf, unsigned a, unsigned b, unsigned given);
double conditional_entropy(const JointPmf& pmf, unsigned target, unsigned given);

inline constexpr std::size_t enumeration_cap = 20;

struct BruteForceQuantization {
    BitSequence info_bits;
    double distortion = 0.0; // Hamming distance / n
};

// Minimum-distortion LDGM preimage; ties go to the smallest info word read
// as an integer with bit 0 least significant. Throws capacity_error if k > 20.
BruteForceQuantization brute_force_quantize(const LdgmCode& code, const BitSequence& y);

// Exact posterior LLRs of every codeword bit given the syndrome and
// independent per-bit priors. Throws capacity_error if n > 20.
LlrSequence exact_marginals(const LdpcCode& code, const BitSequence& syndrome, const LlrSequence& prior);

} // namespace binceo::oracles
