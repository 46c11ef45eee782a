#pragma once

// Property suites over the library's invariants, reported as JSON.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace heralded::cli {

struct VerifyReport {
    std::string suite;
    bool passed = true;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double worst = 0.0;      // worst residual / most negative value, suite-specific
    double threshold = 0.0;
    nlohmann::json details = nlohmann::json::object();

    nlohmann::json to_json() const;
};

const std::vector<std::string>& verify_suites();

VerifyReport verify_monotonicity(std::uint64_t seed, std::size_t samples);
VerifyReport verify_gaussian_bounds(std::uint64_t seed, std::size_t samples);
VerifyReport verify_oracle_equivalence(std::uint64_t seed, std::size_t samples);
VerifyReport verify_representation_triangle(std::uint64_t seed, std::size_t samples);

// Dispatches by name; Error(InvalidArgument) for unknown suites.
VerifyReport run_verify(std::string_view suite, std::uint64_t seed, std::size_t samples);

}  // namespace heralded::cli
