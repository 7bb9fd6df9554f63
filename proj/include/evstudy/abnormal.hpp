#pragma once

#include <span>
#include <vector>

#include "evstudy/market_model.hpp"
#include "evstudy/timeseries.hpp"

namespace evstudy {

enum class ModelKind { Additive, Multiplicative };

const char* to_string(ModelKind kind);

/// Per-day abnormal returns keyed by trading-day offset from the event.
struct AbnormalSeries {
    ModelKind model_kind = ModelKind::Additive;
    std::vector<std::pair<int, double>> observations;
};

/// A cumulative abnormal return together with the window it covers.
struct CumulativeStat {
    OffsetRange window;
    double value = 0.0;
    ModelKind model_kind = ModelKind::Additive;
};

/// Additive abnormal return: actual minus predicted.
double aar(const AdditiveFit& fit, double stock_return, double market_return);

/// Multiplicative abnormal return: gross actual over gross predicted, minus one.
double ar_multiplicative(const MultiplicativeFit& fit, double stock_return,
                         double market_return);

/// Cumulative additive abnormal return: arithmetic sum.
double acar(std::span<const double> abnormals);

/// Cumulative multiplicative abnormal return: product of gross values minus one.
double car(std::span<const double> abnormals);

/// Cross-sectional mean over events.
double mean_acar(std::span<const double> values);

/// Cross-sectional sample standard deviation, K-1 denominator.
double std_acar(std::span<const double> values);

}  // namespace evstudy
