#pragma once

// The acceptance suite: nine criteria with tolerances fixed in code. Shared by
// the acceptance test binary and the `validate-all` experiment.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace persist::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::uint64_t seed = 20260916;
    /// Runs only the listed criteria (all when empty).
    std::vector<int> only;
};

// Pinned tolerances.
inline constexpr double kExponentTol = 1e-12;
inline constexpr double kFresnelRelTol = 1e-8;
inline constexpr double kAxisRelTol = 1e-6;
inline constexpr double kProductTol = 1e-10;
inline constexpr double kKsMax = 0.02;
inline constexpr double kMellinSe = 3.0;
inline constexpr double kMellinRel = 0.05;
inline constexpr double kThetaRel = 0.15;
inline constexpr double kHillSe = 2.0;
inline constexpr double kPropertySe = 3.0;

// Simulation settings.
inline constexpr std::size_t kPaths = 200000;
inline constexpr double kStep = 1e-3;
inline constexpr double kRelStep = 0.01;
inline constexpr double kLawHorizon = 1e40;
inline constexpr double kThetaHorizon = 1e3;
inline constexpr std::size_t kHillK = 2000;

using Reporter = std::function<void(const CriterionResult&)>;

std::vector<CriterionResult> run(const Options& opt = {}, const Reporter& report = {});

std::string format_line(const CriterionResult& r);

}  // namespace persist::acceptance
