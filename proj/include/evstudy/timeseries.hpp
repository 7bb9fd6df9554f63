#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "evstudy/date.hpp"

namespace evstudy {

struct PricePoint {
    Date date;
    double adjusted_close = 0.0;
};

/// Daily adjusted-close observations for one instrument.
/// Dates strictly increasing, every price positive.
struct PriceSeries {
    std::string instrument_id;
    std::vector<PricePoint> observations;

    void validate() const;  // throws std::runtime_error on invariant violation
};

struct ReturnPoint {
    Date date;
    double value = 0.0;
};

/// One-day simple returns, each dated at the later day of its price pair.
struct ReturnSeries {
    std::string instrument_id;
    std::vector<ReturnPoint> observations;

    void validate() const;
};

struct AlignedRow {
    Date date;
    double stock_return = 0.0;
    double market_return = 0.0;
};

/// Same-day (stock, market) return pairs restricted to shared trading dates.
struct AlignedReturns {
    std::vector<AlignedRow> rows;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
};

/// Inclusive trading-day offset range relative to the event day (day 0).
struct OffsetRange {
    int lo = 0;
    int hi = 0;

    int length() const { return hi - lo + 1; }
    std::string to_string() const;  // "lo:hi"

    friend constexpr auto operator<=>(const OffsetRange&, const OffsetRange&) = default;
};

OffsetRange parse_offset_range(std::string_view text);                // "lo:hi"
std::vector<OffsetRange> parse_offset_ranges(std::string_view text);  // comma-separated

/// Estimation window plus the event windows measured against it.
/// Defaults: estimation spans 200 one-day returns, event windows have
/// lengths 3, 5, 7, 9 and 11 trading days.
struct WindowSpec {
    OffsetRange estimation{-201, -2};
    std::vector<OffsetRange> event_windows{{-1, 1}, {-1, 3}, {-1, 5}, {-1, 7}, {-1, 9}};

    void validate() const;  // estimation must strictly precede every event window
};

/// Parses CSV with header "date,adjusted_close" (ISO dates, positive prices).
/// Rows may arrive unsorted; the result is sorted by date. Malformed rows,
/// non-positive prices and duplicate dates are rejected naming the line.
PriceSeries load_price_csv(std::istream& source, std::string instrument_id = {});

/// r_t = (P_t - P_{t-1}) / P_{t-1}, dated at the later day.
ReturnSeries compute_returns(const PriceSeries& prices);

/// Intersection by date; rows present in exactly one input are dropped.
AlignedReturns align(const ReturnSeries& stock, const ReturnSeries& market);

/// Index of the first row with date >= announcement_date (day 0).
std::size_t locate_event(const AlignedReturns& aligned, const Date& announcement_date);

/// Contiguous rows at trading-day offsets [lo, hi] relative to event_index.
AlignedReturns slice_window(const AlignedReturns& aligned, std::size_t event_index,
                            const OffsetRange& offsets);

}  // namespace evstudy
