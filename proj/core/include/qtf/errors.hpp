// errors.hpp — Error kinds raised by the qtf toolkit

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtf {

enum class ErrorKind {
    kNotHermitian,
    kNotPsd,
    kNotFaithful,
    kNotPositive,
    kInvalidDensity,
    kInvalidProbability,
    kDimensionMismatch,
    kNegativeTime,
    kNotConverged,
    kParse,
    kVerification,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qtf
