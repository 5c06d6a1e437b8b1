#pragma once

#include <stdexcept>
#include <string>

namespace cluspost {

// Table sizes disagree (e.g. convolving tables over different ground sets).
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// An argument is outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A fixed-point conversion cannot represent the requested dynamic range.
// Carries the number of fractional bits that would have sufficed.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, long required_bits)
        : std::runtime_error(what), required_bits_(required_bits) {}
    long required_bits() const noexcept { return required_bits_; }

private:
    long required_bits_;
};

// Input data could not be parsed; message carries row/column location.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Every cardinality had zero posterior mass; the model is degenerate.
class EvidenceZeroError : public std::runtime_error {
public:
    explicit EvidenceZeroError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cluspost
