#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heralded {

enum class ErrorKind {
    InvalidArgument,
    InvalidGain,
    DivergentAmplification,
    UnphysicalOutput,
    SingularMatrix,
    GridTooSmall,
    NonIntegrable,
    ZeroInputAmplitude,
    CutoffUnfaithful,
    DegenerateHerald,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidGain: return "InvalidGain";
    case ErrorKind::DivergentAmplification: return "DivergentAmplification";
    case ErrorKind::UnphysicalOutput: return "UnphysicalOutput";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::ZeroInputAmplitude: return "ZeroInputAmplitude";
    case ErrorKind::CutoffUnfaithful: return "CutoffUnfaithful";
    case ErrorKind::DegenerateHerald: return "DegenerateHerald";
    }
    return "Unknown";
}

// Short numeric formatting for error messages (std::to_string prints 6 fixed decimals).
inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace heralded
