#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evstudy/bootstrap.hpp"
#include "evstudy/inference.hpp"
#include "evstudy/market_model.hpp"
#include "evstudy/timeseries.hpp"

namespace evstudy {

struct EventRecord {
    std::string firm_name;
    std::string ticker;
    Date announcement_date;
};

// Reads `firm,ticker,announcement_date` rows. Fields are plain text, no
// quoting; rows keep file order.
std::vector<EventRecord> load_events_csv(std::istream& in);

struct StudyConfig {
    WindowSpec windows;
    std::uint64_t scenario_count = 5'000'000;
    std::uint64_t seed = 0;
    TestConfig test;
    std::vector<Method> methods = {Method::M1, Method::M2, Method::M3};
    int hist_bins = 0;     // 0 disables histogram capture
    unsigned workers = 0;  // 0 picks hardware concurrency; no effect on results

    bool has_method(Method method) const;
    void validate() const;
};

struct HistogramRow {
    double bin_low = 0.0;
    double bin_high = 0.0;
    std::uint64_t count = 0;
};

struct Histogram {
    std::vector<HistogramRow> rows;
};

/// Equal-width bins over [min, max]; the top bin includes the maximum.
Histogram export_histogram(const EmpiricalDistribution& dist, std::size_t bin_count);

struct WindowResult {
    OffsetRange window;
    double acar_value = 0.0;
    double car_value = 0.0;
    std::optional<Verdict> m1;
    std::optional<Verdict> m2;
    std::optional<Verdict> m3;
    std::optional<Histogram> additive_hist;
    std::optional<Histogram> multiplicative_hist;

    const std::optional<Verdict>& verdict(Method method) const;
};

struct EventResult {
    EventRecord event;
    std::size_t ordinal = 0;  // position in the input fixture
    bool skipped = false;
    std::string skip_reason;
    Date event_day;  // trading day mapped to offset 0
    AdditiveFit additive_fit;
    MultiplicativeFit multiplicative_fit;
    std::vector<WindowResult> windows;
};

struct StudyReport {
    StudyConfig config;
    std::string market_id;
    std::vector<EventResult> events;  // fixture order, skipped events included
};

/// Supplies the price series for a ticker; called once per distinct ticker.
using PriceLoader = std::function<PriceSeries(const std::string& ticker)>;

// Runs the full study: per event, fit both models on the estimation window,
// cumulate abnormal returns per event window, and apply the requested
// methods. Data-shaped failures skip the event with a reason; market data
// problems and internal errors propagate.
StudyReport run_study(const std::vector<EventRecord>& events, const PriceLoader& prices,
                      const PriceSeries& market, const StudyConfig& config);

/// File-based variant: prices from `<prices_dir>/<ticker>.csv`.
StudyReport run_study(const std::vector<EventRecord>& events, const std::string& prices_dir,
                      const std::string& market_csv, const StudyConfig& config);

struct EventSummary {
    std::size_t positive_periods = 0;
    std::size_t negative_periods = 0;
    std::size_t no_impact = 0;
};

/// Per-event window-verdict counts for one method, keyed by event ordinal.
/// Skipped events are absent.
std::map<std::size_t, EventSummary> summarize(const StudyReport& report, Method method);

/// Single-event variant; throws for unknown or skipped ordinals.
EventSummary summarize(const StudyReport& report, Method method, std::size_t event_ordinal);

/// Direction index for cross-table axes: Positive 0, NoImpact 1, Negative 2.
std::size_t direction_index(Direction direction);

struct CrossTable {
    Method method_a = Method::M1;
    Method method_b = Method::M1;
    // counts[direction_index(a)][direction_index(b)]
    std::array<std::array<std::uint64_t, 3>, 3> counts{};

    std::uint64_t total() const;
};

/// Verdict-pair counts over all event-window cells carrying both methods.
CrossTable cross_table(const StudyReport& report, Method method_a, Method method_b);

struct DivergenceRates {
    double overestimate = 0.0;   // A flags, reference says NoImpact
    double underestimate = 0.0;  // A says NoImpact, reference flags
};

DivergenceRates divergence_rates(const CrossTable& table);

}  // namespace evstudy
