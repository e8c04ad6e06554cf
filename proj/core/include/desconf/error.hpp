#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace desconf {

enum class ErrorCode {
    NonPrimeP,
    ReducibleModulus,
    DegreeMismatch,
    DivisionByZero,
    InvalidOrder,
    ZeroVector,
    MixedSpaces,
    WrongDimension,
    WrongSpace,
    NotInPerspective,
    Degenerate,
    CompressorMeetsHyperplane,
    BadApexLine,
    ScaleLimit,
    Parse,
    // A proven incidence theorem failed to hold. Only reachable through broken arithmetic.
    InternalDefect,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace desconf
