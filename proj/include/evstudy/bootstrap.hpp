#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evstudy/abnormal.hpp"

namespace evstudy {

struct ScenarioConfig {
    std::uint64_t scenario_count = 5'000'000;
    std::uint64_t seed = 0;
    ModelKind combine_mode = ModelKind::Additive;
};

/// Identifies the inputs a distribution was generated from.
struct Provenance {
    std::uint64_t seed = 0;
    std::uint64_t scenario_count = 0;
    std::uint64_t pool_fingerprint = 0;
};

/// Sorted sample of resampled n-day cumulative abnormal returns.
struct EmpiricalDistribution {
    std::vector<double> values;
    int n_days = 0;
    ModelKind combine_mode = ModelKind::Additive;
    Provenance provenance;
};

/// Order-sensitive FNV-1a hash over the raw bit patterns of the pool.
std::uint64_t pool_fingerprint(std::span<const double> pool);

// Resamples n_days one-day abnormal returns with replacement per scenario and
// cumulates them under combine_mode. Scenario i is a pure function of
// (config.seed, i), so any worker count yields the same sorted sample.
EmpiricalDistribution generate(std::span<const double> pool, int n_days,
                               const ScenarioConfig& config, unsigned workers = 1);

/// Mid-rank percentile of observed: (strictly below + half of equal) / count.
double percentile_of(const EmpiricalDistribution& dist, double observed);

}  // namespace evstudy
