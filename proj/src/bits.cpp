#include "binceo/bits.hpp"

#include "binceo/error.hpp"
#include "binceo/simd/kernels.hpp"

namespace binceo {

BitSequence::BitSequence(std::initializer_list<int> values)
{
    bits_.reserve(values.size());
    for (int v : values) {
        if (v != 0 && v != 1) throw domain_error("BitSequence: symbols must be 0 or 1");
        bits_.push_back(static_cast<std::uint8_t>(v));
    }
}

BitSequence::BitSequence(std::vector<std::uint8_t> values) : bits_(std::move(values))
{
    for (auto v : bits_) {
        if (v > 1) throw domain_error("BitSequence: symbols must be 0 or 1");
    }
}

BitSequence BitSequence::from_string(const std::string& text)
{
    BitSequence out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') throw domain_error("BitSequence: expected only '0'/'1'");
        out.bits_[i] = static_cast<std::uint8_t>(text[i] - '0');
    }
    return out;
}

std::size_t BitSequence::count_ones() const noexcept
{
    const BitSequence zeros(size());
    return simd::active().count_mismatch(bits_.data(), zeros.bits_.data(), size());
}

std::string BitSequence::to_string() const
{
    std::string s(size(), '0');
    for (std::size_t i = 0; i < size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
    return s;
}

BitSequence operator^(const BitSequence& a, const BitSequence& b)
{
    require_same_length(a.size(), b.size(), "xor");
    BitSequence out(a.size());
    simd::active().xor_bytes(a.data(), b.data(), out.data(), a.size());
    return out;
}

std::size_t hamming_distance(const BitSequence& a, const BitSequence& b)
{
    require_same_length(a.size(), b.size(), "hamming_distance");
    return simd::active().count_mismatch(a.data(), b.data(), a.size());
}

double hamming_rate(const BitSequence& a, const BitSequence& b)
{
    if (a.empty() && b.empty()) return 0.0;
    return static_cast<double>(hamming_distance(a, b)) / static_cast<double>(a.size());
}

} // namespace binceo
