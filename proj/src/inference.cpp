#include "evstudy/inference.hpp"

#include <cmath>
#include <stdexcept>

namespace evstudy {

const char* to_string(Direction direction) {
    switch (direction) {
        case Direction::Positive: return "Positive";
        case Direction::NoImpact: return "NoImpact";
        case Direction::Negative: return "Negative";
    }
    return "?";
}

const char* to_string(Method method) {
    switch (method) {
        case Method::M1: return "m1";
        case Method::M2: return "m2";
        case Method::M3: return "m3";
    }
    return "?";
}

void TestConfig::validate() const {
    if (!(z_critical > 0.0))
        throw std::invalid_argument("z_critical must be positive");
    if (!(tail_fraction > 0.0 && tail_fraction < 0.5))
        throw std::invalid_argument("tail_fraction must lie in (0, 0.5)");
}

Verdict method1_per_event(double acar_value, const OffsetRange& window,
                          double estimation_residual_std, const TestConfig& config) {
    config.validate();
    if (window.length() < 1)
        throw std::invalid_argument("window must span at least one day");
    if (!(estimation_residual_std > 0.0))
        throw std::runtime_error("degenerate residual standard deviation, Z undefined");

    const double z = acar_value /
                     (std::sqrt(static_cast<double>(window.length())) * estimation_residual_std);
    Verdict verdict;
    verdict.method = Method::M1;
    verdict.window = window;
    verdict.statistic = z;
    if (z <= -config.z_critical)
        verdict.direction = Direction::Negative;
    else if (z >= config.z_critical)
        verdict.direction = Direction::Positive;
    else
        verdict.direction = Direction::NoImpact;
    return verdict;
}

double method1_aggregate(std::span<const double> acar_values) {
    if (acar_values.size() < 2)
        throw std::invalid_argument("aggregate Z requires at least 2 events");
    const double mean = mean_acar(acar_values);
    const double std = std_acar(acar_values);
    if (std == 0.0)
        throw std::runtime_error("zero cross-sectional standard deviation, Z undefined");
    return mean / (std / std::sqrt(static_cast<double>(acar_values.size())));
}

Verdict empirical_verdict(const EmpiricalDistribution& dist, const CumulativeStat& observed,
                          const TestConfig& config) {
    config.validate();
    if (observed.window.length() != dist.n_days)
        throw std::invalid_argument("window length " + std::to_string(observed.window.length()) +
                                    " does not match distribution of " +
                                    std::to_string(dist.n_days) + "-day scenarios");
    if (observed.model_kind != dist.combine_mode)
        throw std::invalid_argument(std::string("cumulation mode mismatch: observed ") +
                                    to_string(observed.model_kind) + ", distribution " +
                                    to_string(dist.combine_mode));

    const double p = percentile_of(dist, observed.value);
    Verdict verdict;
    verdict.method =
        dist.combine_mode == ModelKind::Additive ? Method::M2 : Method::M3;
    verdict.window = observed.window;
    verdict.statistic = p;
    if (observed.value < 0.0 && p <= config.tail_fraction)
        verdict.direction = Direction::Negative;
    else if (observed.value > 0.0 && p >= 1.0 - config.tail_fraction)
        verdict.direction = Direction::Positive;
    else
        verdict.direction = Direction::NoImpact;
    return verdict;
}

}  // namespace evstudy
