#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qkneser {

enum class Errc {
    NotPrimePower,
    Unsupported,
    DivisionByZero,
    DimensionMismatch,
    InvalidArgs,
    HypothesisViolation,
    InvalidType,
    TooLarge,
    InvalidDescriptor,
    MalformedCertificate,
    NotIndependent,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace qkneser
