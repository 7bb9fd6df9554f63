#pragma once

#include <span>

#include "evstudy/abnormal.hpp"
#include "evstudy/bootstrap.hpp"
#include "evstudy/timeseries.hpp"

namespace evstudy {

enum class Direction { Positive, NoImpact, Negative };
enum class Method { M1, M2, M3 };

const char* to_string(Direction direction);
const char* to_string(Method method);

struct TestConfig {
    double z_critical = 1.282;
    double tail_fraction = 0.10;

    /// Throws unless z_critical > 0 and tail_fraction is in (0, 0.5).
    void validate() const;
};

/// Outcome of one method on one event window.
struct Verdict {
    Direction direction = Direction::NoImpact;
    double statistic = 0.0;  // Z value for M1, percentile in [0,1] for M2/M3
    Method method = Method::M1;
    OffsetRange window;
};

// Per-event Z-test: Z = acar / (sqrt(L) * residual_std) with L the window
// length; |Z| at or above z_critical rejects in the direction of the sign.
Verdict method1_per_event(double acar_value, const OffsetRange& window,
                          double estimation_residual_std, const TestConfig& config);

/// Cross-sectional Z over events: mean / (std / sqrt(K)).
double method1_aggregate(std::span<const double> acar_values);

// Tail test against a resampled distribution. Negative needs a negative
// observed value in the bottom tail, Positive a positive one in the top tail;
// a tail position with the wrong sign stays NoImpact.
Verdict empirical_verdict(const EmpiricalDistribution& dist, const CumulativeStat& observed,
                          const TestConfig& config);

}  // namespace evstudy
