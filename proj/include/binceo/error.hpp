#pragma once

#include <stdexcept>
#include <string>

namespace binceo {

// Probability or parameter outside its admissible range.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Sequence lengths that do not line up.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Graph or code could not be built from the requested geometry.
class construction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No test-channel pair attains the requested sum-rate.
class infeasible_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Brute-force oracle invoked beyond its enumeration cap.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_same_length(std::size_t a, std::size_t b, const char* what)
{
    if (a != b) {
        throw dimension_error(std::string(what) + ": length mismatch (" + std::to_string(a) +
                              " vs " + std::to_string(b) + ")");
    }
}

} // namespace binceo
