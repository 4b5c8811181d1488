// Reproducible scenarios comparing measured densities with their predicted limits.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "idealdens/afree.hpp"
#include "idealdens/field.hpp"

namespace idealdens {

class BoundsExceedX : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Tolerances for measured densities at the largest sample.
inline constexpr double natural_tolerance = 1e-2;
inline constexpr double logarithmic_tolerance = 5e-2;
inline constexpr double finite_sample_slack = 1e-3;

struct ExperimentRow {
    std::string series;
    std::uint64_t x = 0;  // sample norm, or r / k for sequences
    double measured = 0;
    double target = 0;
    double tolerance = 0;

    double deviation() const { return measured - target; }
    bool within() const;
};

struct Verdict {
    std::string name;
    bool pass = false;
    /// Non-gating verdicts are reported but do not decide the outcome.
    bool gating = true;
    std::string detail;
};

struct ExperimentResult {
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<ExperimentRow> rows;
    std::vector<Verdict> verdicts;

    bool passed() const;
    const Verdict& verdict(const std::string& name) const;

    /// series,x,measured,target,deviation,tolerance,within
    std::string to_csv() const;
    nlohmann::ordered_json summary() const;
};

struct PrimePowerFreeParams {
    int l = 2;
    std::uint64_t max_norm = 1'000'000;
    std::size_t samples = 25;
    unsigned threads = 1;
};

/// Natural and logarithmic density of the l-th-power-free ideals against 1/zeta_K(l).
ExperimentResult primepower_free_experiment(const NumberField& k, const PrimePowerFreeParams& params);

struct MainTheoremParams {
    std::uint64_t max_norm = 1'000'000;
    std::size_t r_max = 200;
    std::size_t k_max = 200;
    std::size_t samples = 25;
    std::uint64_t work_bound = default_work_bound;
    unsigned threads = 1;
};

/// A_r, B_k and the measured logarithmic ratio of M_A side by side.
ExperimentResult main_theorem_experiment(const AFamily& a, const MainTheoremParams& params);

struct BesicovitchParams {
    std::uint64_t t0 = 10;
    std::uint64_t growth = 3;
    std::size_t depth = 3;
    std::uint64_t max_norm = 1'000'000;
    std::size_t samples = 25;
    unsigned threads = 1;
};

/// Intervals (T_i, 2 T_i] with T_{i+1} = T_i^growth, clipped to 64 bits.
std::vector<NormInterval> besicovitch_intervals(const BesicovitchParams& params);

/// Oscillation of the natural ratio of M_A for A = ideals with norm in the
/// intervals, against the variation of the logarithmic ratio.
ExperimentResult besicovitch_experiment(const NumberField& k, const BesicovitchParams& params);

}  // namespace idealdens
