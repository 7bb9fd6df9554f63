#include "evstudy/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "evstudy/abnormal.hpp"
#include "evstudy/rng.hpp"

namespace evstudy {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t") == std::string::npos;
}

[[noreturn]] void reject(const std::string& what, long line_no) {
    throw std::runtime_error(what + " at line " + std::to_string(line_no));
}

// Distribution substream slot for an event window: even slots additive, odd
// multiplicative, spread by window length so slots never collide.
std::uint64_t distribution_slot(int n_days, ModelKind mode) {
    return 2ULL * static_cast<std::uint64_t>(n_days) +
           (mode == ModelKind::Multiplicative ? 1 : 0);
}

// Zero residual variance means a perfect in-sample fit; the Z statistic is
// then 0/0 for a zero ACAR (read as no evidence) and unbounded otherwise.
// method1_per_event keeps its error contract; this policy applies only here.
Verdict method1_or_degenerate(double acar_value, const OffsetRange& window,
                              double residual_std, const TestConfig& config) {
    if (residual_std > 0.0) return method1_per_event(acar_value, window, residual_std, config);
    Verdict verdict;
    verdict.method = Method::M1;
    verdict.window = window;
    if (acar_value == 0.0) {
        verdict.statistic = 0.0;
        verdict.direction = Direction::NoImpact;
    } else {
        verdict.statistic =
            std::copysign(std::numeric_limits<double>::infinity(), acar_value);
        verdict.direction = acar_value < 0.0 ? Direction::Negative : Direction::Positive;
    }
    return verdict;
}

struct TickerData {
    AlignedReturns aligned;
    std::string error;  // non-empty marks the ticker unusable
};

EventResult process_event(const EventRecord& event, std::size_t ordinal,
                          const TickerData& data, const StudyConfig& config) {
    EventResult result;
    result.event = event;
    result.ordinal = ordinal;
    try {
        if (!data.error.empty()) throw std::runtime_error(data.error);

        const std::size_t at = locate_event(data.aligned, event.announcement_date);
        result.event_day = data.aligned.rows[at].date;

        const AlignedReturns estimation =
            slice_window(data.aligned, at, config.windows.estimation);
        result.additive_fit = fit_additive(estimation);
        result.multiplicative_fit = fit_multiplicative(estimation);

        const std::uint64_t event_stream = substream_seed(config.seed, ordinal);
        result.windows.reserve(config.windows.event_windows.size());
        for (const OffsetRange& window : config.windows.event_windows) {
            WindowResult wr;
            wr.window = window;

            const AlignedReturns rows = slice_window(data.aligned, at, window);
            std::vector<double> aars, ars;
            aars.reserve(rows.size());
            ars.reserve(rows.size());
            for (const AlignedRow& row : rows.rows) {
                aars.push_back(aar(result.additive_fit, row.stock_return, row.market_return));
                ars.push_back(ar_multiplicative(result.multiplicative_fit, row.stock_return,
                                                row.market_return));
            }
            wr.acar_value = acar(aars);
            wr.car_value = car(ars);

            if (config.has_method(Method::M1))
                wr.m1 = method1_or_degenerate(wr.acar_value, window,
                                              result.additive_fit.residual_std, config.test);

            if (config.has_method(Method::M2)) {
                ScenarioConfig scenario{
                    config.scenario_count,
                    substream_seed(event_stream,
                                   distribution_slot(window.length(), ModelKind::Additive)),
                    ModelKind::Additive};
                const EmpiricalDistribution dist =
                    generate(result.additive_fit.residuals, window.length(), scenario);
                wr.m2 = empirical_verdict(
                    dist, {window, wr.acar_value, ModelKind::Additive}, config.test);
                if (config.hist_bins > 0)
                    wr.additive_hist =
                        export_histogram(dist, static_cast<std::size_t>(config.hist_bins));
            }

            if (config.has_method(Method::M3)) {
                ScenarioConfig scenario{
                    config.scenario_count,
                    substream_seed(event_stream,
                                   distribution_slot(window.length(), ModelKind::Multiplicative)),
                    ModelKind::Multiplicative};
                const EmpiricalDistribution dist =
                    generate(result.multiplicative_fit.residuals, window.length(), scenario);
                wr.m3 = empirical_verdict(
                    dist, {window, wr.car_value, ModelKind::Multiplicative}, config.test);
                if (config.hist_bins > 0)
                    wr.multiplicative_hist =
                        export_histogram(dist, static_cast<std::size_t>(config.hist_bins));
            }

            result.windows.push_back(std::move(wr));
        }
    } catch (const std::runtime_error& e) {
        result.skipped = true;
        result.skip_reason = e.what();
        result.windows.clear();
    }
    return result;
}

void require_method(const StudyReport& report, Method method) {
    if (!report.config.has_method(method))
        throw std::invalid_argument(std::string("method ") + to_string(method) +
                                    " missing from report");
}

EventSummary count_event(const EventResult& event, Method method) {
    EventSummary summary;
    for (const WindowResult& wr : event.windows) {
        const std::optional<Verdict>& verdict = wr.verdict(method);
        if (!verdict)
            throw std::logic_error("verdict missing on a summarized event");
        switch (verdict->direction) {
            case Direction::Positive: ++summary.positive_periods; break;
            case Direction::Negative: ++summary.negative_periods; break;
            case Direction::NoImpact: ++summary.no_impact; break;
        }
    }
    return summary;
}

}  // namespace

std::vector<EventRecord> load_events_csv(std::istream& in) {
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) throw std::runtime_error("empty events CSV");
    ++line_no;
    if (strip_cr(line) != "firm,ticker,announcement_date")
        throw std::runtime_error("bad events CSV header '" + strip_cr(line) +
                                 "' (expected firm,ticker,announcement_date)");

    std::vector<EventRecord> events;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (is_blank(line)) continue;

        const auto first = line.find(',');
        const auto second = first == std::string::npos ? std::string::npos
                                                       : line.find(',', first + 1);
        if (second == std::string::npos || line.find(',', second + 1) != std::string::npos)
            reject("malformed row", line_no);

        EventRecord record;
        record.firm_name = line.substr(0, first);
        record.ticker = line.substr(first + 1, second - first - 1);
        if (record.firm_name.empty() || record.ticker.empty()) reject("empty field", line_no);

        const std::string date_text = line.substr(second + 1);
        if (!Date::parse(date_text, record.announcement_date))
            reject("bad date '" + date_text + "'", line_no);

        events.push_back(std::move(record));
    }
    return events;
}

bool StudyConfig::has_method(Method method) const {
    return std::find(methods.begin(), methods.end(), method) != methods.end();
}

void StudyConfig::validate() const {
    windows.validate();
    test.validate();
    if (scenario_count < 1)
        throw std::invalid_argument("scenario count must be at least 1");
    if (methods.empty())
        throw std::invalid_argument("at least one method must be requested");
    auto sorted = methods;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate method in configuration");
    if (hist_bins < 0)
        throw std::invalid_argument("histogram bin count cannot be negative");
}

Histogram export_histogram(const EmpiricalDistribution& dist, std::size_t bin_count) {
    if (bin_count < 1) throw std::invalid_argument("bin count must be at least 1");
    if (dist.values.empty())
        throw std::invalid_argument("cannot bin an empty distribution");

    const double lo = dist.values.front();
    const double hi = dist.values.back();
    Histogram histogram;
    if (lo == hi) {
        histogram.rows.push_back({lo, hi, dist.values.size()});
        return histogram;
    }

    std::vector<double> edges(bin_count + 1);
    const double span = hi - lo;
    for (std::size_t k = 0; k <= bin_count; ++k)
        edges[k] = lo + span * (static_cast<double>(k) / static_cast<double>(bin_count));
    edges.front() = lo;
    edges.back() = hi;

    histogram.rows.reserve(bin_count);
    std::size_t start = 0;
    for (std::size_t k = 0; k < bin_count; ++k) {
        // the top bin absorbs everything up to and including the maximum
        const std::size_t stop =
            k + 1 == bin_count
                ? dist.values.size()
                : static_cast<std::size_t>(
                      std::lower_bound(dist.values.begin() + static_cast<std::ptrdiff_t>(start),
                                       dist.values.end(), edges[k + 1]) -
                      dist.values.begin());
        histogram.rows.push_back({edges[k], edges[k + 1],
                                  static_cast<std::uint64_t>(stop - start)});
        start = stop;
    }
    return histogram;
}

const std::optional<Verdict>& WindowResult::verdict(Method method) const {
    switch (method) {
        case Method::M1: return m1;
        case Method::M2: return m2;
        case Method::M3: return m3;
    }
    throw std::invalid_argument("unknown method");
}

StudyReport run_study(const std::vector<EventRecord>& events, const PriceLoader& prices,
                      const PriceSeries& market, const StudyConfig& config) {
    config.validate();
    market.validate();

    StudyReport report;
    report.config = config;
    report.market_id = market.instrument_id;

    const ReturnSeries market_returns = compute_returns(market);

    // one load+align per distinct ticker, serial; only data-shaped failures
    // are cached as skip reasons, anything else aborts the study
    std::map<std::string, TickerData> by_ticker;
    for (const EventRecord& event : events) {
        if (by_ticker.count(event.ticker)) continue;
        TickerData data;
        try {
            PriceSeries series = prices(event.ticker);
            series.validate();
            data.aligned = align(compute_returns(series), market_returns);
        } catch (const std::runtime_error& e) {
            data.error = e.what();
        }
        by_ticker.emplace(event.ticker, std::move(data));
    }

    report.events.resize(events.size());

    unsigned workers = config.workers != 0 ? config.workers
                                           : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, std::max<std::size_t>(events.size(), 1)));

    if (workers <= 1) {
        for (std::size_t i = 0; i < events.size(); ++i)
            report.events[i] =
                process_event(events[i], i, by_ticker.at(events[i].ticker), config);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::exception_ptr> failures(workers);
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (;;) {
                        const std::size_t i = cursor.fetch_add(1);
                        if (i >= events.size()) break;
                        report.events[i] =
                            process_event(events[i], i, by_ticker.at(events[i].ticker), config);
                    }
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (std::thread& t : threads) t.join();
        for (const std::exception_ptr& failure : failures)
            if (failure) std::rethrow_exception(failure);
    }

    return report;
}

StudyReport run_study(const std::vector<EventRecord>& events, const std::string& prices_dir,
                      const std::string& market_csv, const StudyConfig& config) {
    std::ifstream market_in(market_csv);
    if (!market_in) throw std::runtime_error("cannot open market data file " + market_csv);
    const PriceSeries market =
        load_price_csv(market_in, std::filesystem::path(market_csv).stem().string());

    PriceLoader loader = [&prices_dir](const std::string& ticker) {
        const std::string path = prices_dir + "/" + ticker + ".csv";
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open price file " + path);
        return load_price_csv(in, ticker);
    };
    return run_study(events, loader, market, config);
}

std::map<std::size_t, EventSummary> summarize(const StudyReport& report, Method method) {
    require_method(report, method);
    std::map<std::size_t, EventSummary> summaries;
    for (const EventResult& event : report.events) {
        if (event.skipped) continue;
        summaries.emplace(event.ordinal, count_event(event, method));
    }
    return summaries;
}

EventSummary summarize(const StudyReport& report, Method method, std::size_t event_ordinal) {
    require_method(report, method);
    for (const EventResult& event : report.events) {
        if (event.ordinal != event_ordinal) continue;
        if (event.skipped)
            throw std::invalid_argument("event ordinal " + std::to_string(event_ordinal) +
                                        " was skipped: " + event.skip_reason);
        return count_event(event, method);
    }
    throw std::invalid_argument("unknown event ordinal " + std::to_string(event_ordinal));
}

std::size_t direction_index(Direction direction) {
    switch (direction) {
        case Direction::Positive: return 0;
        case Direction::NoImpact: return 1;
        case Direction::Negative: return 2;
    }
    throw std::invalid_argument("unknown direction");
}

std::uint64_t CrossTable::total() const {
    std::uint64_t sum = 0;
    for (const auto& row : counts)
        for (std::uint64_t cell : row) sum += cell;
    return sum;
}

CrossTable cross_table(const StudyReport& report, Method method_a, Method method_b) {
    require_method(report, method_a);
    require_method(report, method_b);

    CrossTable table;
    table.method_a = method_a;
    table.method_b = method_b;
    for (const EventResult& event : report.events) {
        if (event.skipped) continue;
        for (const WindowResult& wr : event.windows) {
            const std::optional<Verdict>& a = wr.verdict(method_a);
            const std::optional<Verdict>& b = wr.verdict(method_b);
            if (!a || !b) throw std::logic_error("verdict missing on a summarized event");
            ++table.counts[direction_index(a->direction)][direction_index(b->direction)];
        }
    }
    return table;
}

DivergenceRates divergence_rates(const CrossTable& table) {
    const std::uint64_t total = table.total();
    if (total == 0) throw std::invalid_argument("empty cross-table");

    const auto& c = table.counts;
    DivergenceRates rates;
    rates.overestimate = static_cast<double>(c[0][1] + c[2][1]) / static_cast<double>(total);
    rates.underestimate = static_cast<double>(c[1][0] + c[1][2]) / static_cast<double>(total);
    return rates;
}

}  // namespace evstudy
