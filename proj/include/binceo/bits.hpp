#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace binceo {

// Fixed-length sequence of binary symbols, one 0/1 byte per symbol.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::size_t n) : bits_(n, 0) {}
    BitSequence(std::initializer_list<int> values);
    explicit BitSequence(std::vector<std::uint8_t> values);

    // "0110..." -> bits; any other character is rejected
    static BitSequence from_string(const std::string& text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
    void set(std::size_t i, int value) noexcept { bits_[i] = static_cast<std::uint8_t>(value & 1); }
    void flip(std::size_t i) noexcept { bits_[i] ^= 1; }

    std::span<const std::uint8_t> view() const noexcept { return bits_; }
    const std::uint8_t* data() const noexcept { return bits_.data(); }
    std::uint8_t* data() noexcept { return bits_.data(); }

    std::size_t count_ones() const noexcept;
    std::string to_string() const;

    friend bool operator==(const BitSequence&, const BitSequence&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

// Element-wise mod-2 sum.
BitSequence operator^(const BitSequence& a, const BitSequence& b);

std::size_t hamming_distance(const BitSequence& a, const BitSequence& b);

// Hamming distance divided by length; 0 for empty sequences.
double hamming_rate(const BitSequence& a, const BitSequence& b);

} // namespace binceo
