#include "evstudy/timeseries.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <istream>
#include <stdexcept>

namespace evstudy {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t") == std::string::npos;
}

bool parse_double_field(const std::string& text, double& out) {
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return errno == 0 && end == text.c_str() + text.size();
}

[[noreturn]] void reject(const std::string& what, long line_no) {
    throw std::runtime_error(what + " at line " + std::to_string(line_no));
}

}  // namespace

void PriceSeries::validate() const {
    for (std::size_t i = 0; i < observations.size(); ++i) {
        if (observations[i].adjusted_close <= 0.0)
            throw std::runtime_error("price series " + instrument_id + ": non-positive price at " +
                                     observations[i].date.to_string());
        if (i > 0 && !(observations[i - 1].date < observations[i].date))
            throw std::runtime_error("price series " + instrument_id +
                                     ": dates not strictly increasing at " +
                                     observations[i].date.to_string());
    }
}

void ReturnSeries::validate() const {
    for (std::size_t i = 0; i < observations.size(); ++i) {
        if (observations[i].value <= -1.0)
            throw std::runtime_error("return series " + instrument_id + ": return <= -1 at " +
                                     observations[i].date.to_string());
        if (i > 0 && !(observations[i - 1].date < observations[i].date))
            throw std::runtime_error("return series " + instrument_id +
                                     ": dates not strictly increasing at " +
                                     observations[i].date.to_string());
    }
}

std::string OffsetRange::to_string() const {
    return std::to_string(lo) + ":" + std::to_string(hi);
}

OffsetRange parse_offset_range(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::runtime_error("bad offset range '" + std::string(text) + "' (expected lo:hi)");
    OffsetRange range;
    try {
        std::size_t used = 0;
        std::string lo_str(text.substr(0, colon));
        std::string hi_str(text.substr(colon + 1));
        range.lo = std::stoi(lo_str, &used);
        if (used != lo_str.size()) throw std::invalid_argument("trailing");
        range.hi = std::stoi(hi_str, &used);
        if (used != hi_str.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw std::runtime_error("bad offset range '" + std::string(text) + "' (expected lo:hi)");
    }
    if (range.lo > range.hi)
        throw std::runtime_error("bad offset range '" + std::string(text) + "' (lo > hi)");
    return range;
}

std::vector<OffsetRange> parse_offset_ranges(std::string_view text) {
    std::vector<OffsetRange> ranges;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - start);
        if (!piece.empty()) ranges.push_back(parse_offset_range(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (ranges.empty()) throw std::runtime_error("no offset ranges in '" + std::string(text) + "'");
    return ranges;
}

void WindowSpec::validate() const {
    if (estimation.lo > estimation.hi) throw std::runtime_error("estimation range has lo > hi");
    if (event_windows.empty()) throw std::runtime_error("no event windows configured");
    for (const auto& window : event_windows) {
        if (window.lo > window.hi)
            throw std::runtime_error("event window " + window.to_string() + " has lo > hi");
        if (estimation.hi >= window.lo)
            throw std::runtime_error("estimation range " + estimation.to_string() +
                                     " does not precede event window " + window.to_string());
    }
}

PriceSeries load_price_csv(std::istream& source, std::string instrument_id) {
    std::string line;
    long line_no = 0;

    if (!std::getline(source, line)) throw std::runtime_error("empty price CSV");
    ++line_no;
    if (strip_cr(line) != "date,adjusted_close")
        throw std::runtime_error("bad price CSV header '" + strip_cr(line) +
                                 "' (expected date,adjusted_close)");

    struct Row {
        PricePoint point;
        long line_no;
    };
    std::vector<Row> rows;
    while (std::getline(source, line)) {
        ++line_no;
        line = strip_cr(line);
        if (is_blank(line)) continue;

        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            reject("malformed row", line_no);

        Date date;
        if (!Date::parse(std::string_view(line).substr(0, comma), date))
            reject("bad date '" + line.substr(0, comma) + "'", line_no);

        double price = 0.0;
        if (!parse_double_field(line.substr(comma + 1), price)) reject("malformed row", line_no);
        if (!(price > 0.0)) reject("non-positive price", line_no);

        rows.push_back({{date, price}, line_no});
    }

    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.point.date < b.point.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].point.date == rows[i].point.date)
            reject("duplicate date " + rows[i].point.date.to_string(),
                   std::max(rows[i - 1].line_no, rows[i].line_no));
    }

    PriceSeries series;
    series.instrument_id = std::move(instrument_id);
    series.observations.reserve(rows.size());
    for (const auto& row : rows) series.observations.push_back(row.point);
    return series;
}

ReturnSeries compute_returns(const PriceSeries& prices) {
    if (prices.observations.empty())
        throw std::runtime_error("cannot compute returns of empty price series");

    ReturnSeries returns;
    returns.instrument_id = prices.instrument_id;
    returns.observations.reserve(prices.observations.size() - 1);
    for (std::size_t i = 1; i < prices.observations.size(); ++i) {
        const double prev = prices.observations[i - 1].adjusted_close;
        const double curr = prices.observations[i].adjusted_close;
        returns.observations.push_back({prices.observations[i].date, (curr - prev) / prev});
    }
    return returns;
}

AlignedReturns align(const ReturnSeries& stock, const ReturnSeries& market) {
    AlignedReturns aligned;
    std::size_t i = 0, j = 0;
    while (i < stock.observations.size() && j < market.observations.size()) {
        const Date& a = stock.observations[i].date;
        const Date& b = market.observations[j].date;
        if (a < b) {
            ++i;
        } else if (b < a) {
            ++j;
        } else {
            aligned.rows.push_back({a, stock.observations[i].value, market.observations[j].value});
            ++i;
            ++j;
        }
    }
    if (aligned.empty())
        throw std::runtime_error("empty date intersection between " + stock.instrument_id +
                                 " and " + market.instrument_id);
    return aligned;
}

std::size_t locate_event(const AlignedReturns& aligned, const Date& announcement_date) {
    auto it = std::lower_bound(
        aligned.rows.begin(), aligned.rows.end(), announcement_date,
        [](const AlignedRow& row, const Date& date) { return row.date < date; });
    if (it == aligned.rows.end())
        throw std::runtime_error("event " + announcement_date.to_string() +
                                 " beyond data range (last trading day " +
                                 aligned.rows.back().date.to_string() + ")");
    return static_cast<std::size_t>(it - aligned.rows.begin());
}

AlignedReturns slice_window(const AlignedReturns& aligned, std::size_t event_index,
                            const OffsetRange& offsets) {
    if (offsets.lo > offsets.hi)
        throw std::runtime_error("bad window " + offsets.to_string() + " (lo > hi)");
    if (event_index >= aligned.size()) throw std::runtime_error("event index out of range");

    const long first = static_cast<long>(event_index) + offsets.lo;
    const long last = static_cast<long>(event_index) + offsets.hi;
    if (first < 0)
        throw std::runtime_error("insufficient history: window " + offsets.to_string() + " needs " +
                                 std::to_string(-offsets.lo) + " rows before the event, have " +
                                 std::to_string(event_index));
    if (last >= static_cast<long>(aligned.size()))
        throw std::runtime_error("insufficient post-event data: window " + offsets.to_string() +
                                 " needs " + std::to_string(offsets.hi) +
                                 " rows after the event, have " +
                                 std::to_string(aligned.size() - 1 - event_index));

    AlignedReturns window;
    window.rows.assign(aligned.rows.begin() + first, aligned.rows.begin() + last + 1);
    return window;
}

}  // namespace evstudy
