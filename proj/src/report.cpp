#include "evstudy/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "evstudy/abnormal.hpp"

namespace evstudy {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(const char* spec, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, spec, value);
    return buffer;
}

std::string exact(double value) { return fmt("%.17g", value); }

// JSON has no non-finite numbers; fall back to strings for them
ordered_json json_number(double value) {
    if (std::isfinite(value)) return value;
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
}

std::string windows_list(const std::vector<OffsetRange>& windows) {
    std::string out;
    for (const OffsetRange& w : windows) {
        if (!out.empty()) out += ", ";
        out += w.to_string();
    }
    return out;
}

std::string methods_list(const std::vector<Method>& methods) {
    std::string out;
    for (Method m : methods) {
        if (!out.empty()) out += ", ";
        out += to_string(m);
    }
    return out;
}

std::string pad(std::string text, std::size_t width) {
    if (text.size() < width) text.append(width - text.size(), ' ');
    return text;
}

std::string lead(std::string text, std::size_t width) {
    if (text.size() < width) text.insert(0, width - text.size(), ' ');
    return text;
}

std::string summary_cell(const EventSummary& summary) {
    return std::to_string(summary.positive_periods) + "/" +
           std::to_string(summary.negative_periods) + "/" +
           std::to_string(summary.no_impact);
}

constexpr const char* kDirectionLabels[3] = {"Positive", "NoImpact", "Negative"};

std::string window_tag(const OffsetRange& window) {
    return std::to_string(window.lo) + "to" + std::to_string(window.hi);
}

std::string sanitize_for_filename(const std::string& text) {
    std::string out = text;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-')
            c = '-';
    return out;
}

ordered_json verdict_json(const Verdict& verdict) {
    ordered_json j;
    j["direction"] = to_string(verdict.direction);
    j[verdict.method == Method::M1 ? "z" : "percentile"] = json_number(verdict.statistic);
    return j;
}

}  // namespace

std::vector<AggregateStat> aggregate_stats(const StudyReport& report) {
    std::vector<AggregateStat> stats;
    const auto& windows = report.config.windows.event_windows;
    stats.reserve(windows.size());

    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
        AggregateStat stat;
        stat.window = windows[wi];

        std::vector<double> values;
        for (const EventResult& event : report.events) {
            if (event.skipped) continue;
            values.push_back(event.windows[wi].acar_value);
        }
        stat.k = values.size();
        if (stat.k >= 1) stat.mean = mean_acar(values);
        if (stat.k >= 2) {
            stat.std_dev = std_acar(values);
            if (*stat.std_dev > 0.0) stat.z = method1_aggregate(values);
        }
        stats.push_back(stat);
    }
    return stats;
}

void write_report_text(const StudyReport& report, std::ostream& out) {
    const StudyConfig& cfg = report.config;

    out << "Event study report\n";
    out << "==================\n\n";

    out << "Configuration\n";
    out << "  market:         " << report.market_id << "\n";
    out << "  estimation:     " << cfg.windows.estimation.to_string() << "\n";
    out << "  windows:        " << windows_list(cfg.windows.event_windows) << "\n";
    out << "  scenarios:      " << cfg.scenario_count << "\n";
    out << "  seed:           " << cfg.seed << "\n";
    out << "  z_critical:     " << fmt("%g", cfg.test.z_critical) << "\n";
    out << "  tail_fraction:  " << fmt("%g", cfg.test.tail_fraction) << "\n";
    out << "  methods:        " << methods_list(cfg.methods) << "\n";
    out << "  hist_bins:      " << cfg.hist_bins << "\n\n";

    std::size_t skipped = 0;
    for (const EventResult& event : report.events)
        if (event.skipped) ++skipped;
    out << "Events: " << report.events.size() << " total, "
        << report.events.size() - skipped << " summarized, " << skipped << " skipped\n\n";

    std::size_t firm_width = 4, ticker_width = 6;
    for (const EventResult& event : report.events) {
        firm_width = std::max(firm_width, event.event.firm_name.size());
        ticker_width = std::max(ticker_width, event.event.ticker.size());
    }

    out << "Per-event periods as +ve/-ve/no-impact counts over "
        << cfg.windows.event_windows.size() << " windows\n";
    out << "  " << lead("ord", 3) << "  " << pad("firm", firm_width) << "  "
        << pad("ticker", ticker_width) << "  " << pad("announced", 10);
    for (Method m : cfg.methods) out << "  " << pad(to_string(m), 8);
    out << "\n";
    for (const EventResult& event : report.events) {
        if (event.skipped) continue;
        out << "  " << lead(std::to_string(event.ordinal), 3) << "  "
            << pad(event.event.firm_name, firm_width) << "  "
            << pad(event.event.ticker, ticker_width) << "  "
            << pad(event.event.announcement_date.to_string(), 10);
        for (Method m : cfg.methods)
            out << "  " << pad(summary_cell(summarize(report, m, event.ordinal)), 8);
        out << "\n";
    }
    out << "\n";

    if (skipped > 0) {
        out << "Skipped events\n";
        for (const EventResult& event : report.events) {
            if (!event.skipped) continue;
            out << "  " << lead(std::to_string(event.ordinal), 3) << "  "
                << event.event.firm_name << " (" << event.event.ticker << ", "
                << event.event.announcement_date.to_string() << "): " << event.skip_reason
                << "\n";
        }
        out << "\n";
    }

    out << "Cross-sectional additive aggregates per window\n";
    out << "  " << pad("window", 8) << "  " << lead("K", 4) << "  " << pad("mean", 12) << "  "
        << pad("std", 12) << "  " << pad("Z", 10) << "\n";
    for (const AggregateStat& stat : aggregate_stats(report)) {
        out << "  " << pad(stat.window.to_string(), 8) << "  "
            << lead(std::to_string(stat.k), 4) << "  "
            << pad(stat.mean ? fmt("%.6f", *stat.mean) : "-", 12) << "  "
            << pad(stat.std_dev ? fmt("%.6f", *stat.std_dev) : "-", 12) << "  "
            << pad(stat.z ? fmt("%.4f", *stat.z) : "-", 10) << "\n";
    }
    out << "\n";

    const std::pair<Method, Method> pairs[] = {
        {Method::M1, Method::M2}, {Method::M1, Method::M3}, {Method::M2, Method::M3}};
    for (const auto& [a, b] : pairs) {
        if (!cfg.has_method(a) || !cfg.has_method(b)) continue;
        const CrossTable table = cross_table(report, a, b);
        out << "Cross-table " << to_string(a) << " vs " << to_string(b) << " (rows "
            << to_string(a) << ", columns " << to_string(b) << ")\n";
        out << "  " << pad("", 10);
        for (const char* label : kDirectionLabels) out << "  " << lead(label, 8);
        out << "\n";
        for (std::size_t r = 0; r < 3; ++r) {
            out << "  " << pad(kDirectionLabels[r], 10);
            for (std::size_t c = 0; c < 3; ++c)
                out << "  " << lead(std::to_string(table.counts[r][c]), 8);
            out << "\n";
        }
        if (table.total() > 0) {
            const DivergenceRates rates = divergence_rates(table);
            out << "  total " << table.total() << ", overestimate "
                << fmt("%.2f", 100.0 * rates.overestimate) << "%, underestimate "
                << fmt("%.2f", 100.0 * rates.underestimate) << "%\n";
        } else {
            out << "  total 0 (no compared cells)\n";
        }
        out << "\n";
    }
}

void write_report_json(const StudyReport& report, std::ostream& out) {
    const StudyConfig& cfg = report.config;

    ordered_json j;
    ordered_json config;
    config["market"] = report.market_id;
    config["estimation"] = cfg.windows.estimation.to_string();
    ordered_json window_names = ordered_json::array();
    for (const OffsetRange& w : cfg.windows.event_windows) window_names.push_back(w.to_string());
    config["windows"] = window_names;
    config["scenario_count"] = cfg.scenario_count;
    config["seed"] = cfg.seed;
    config["z_critical"] = cfg.test.z_critical;
    config["tail_fraction"] = cfg.test.tail_fraction;
    ordered_json method_names = ordered_json::array();
    for (Method m : cfg.methods) method_names.push_back(to_string(m));
    config["methods"] = method_names;
    config["hist_bins"] = cfg.hist_bins;
    j["config"] = config;

    ordered_json events = ordered_json::array();
    for (const EventResult& event : report.events) {
        ordered_json ev;
        ev["ordinal"] = event.ordinal;
        ev["firm"] = event.event.firm_name;
        ev["ticker"] = event.event.ticker;
        ev["announcement_date"] = event.event.announcement_date.to_string();
        ev["skipped"] = event.skipped;
        if (event.skipped) {
            ev["reason"] = event.skip_reason;
            events.push_back(ev);
            continue;
        }
        ev["event_day"] = event.event_day.to_string();

        ordered_json fits;
        fits["additive"] = {{"alpha", json_number(event.additive_fit.alpha_hat)},
                            {"beta", json_number(event.additive_fit.beta_hat)},
                            {"residual_std", json_number(event.additive_fit.residual_std)},
                            {"n_obs", event.additive_fit.n_obs}};
        fits["multiplicative"] = {
            {"ln_alpha", json_number(event.multiplicative_fit.ln_alpha_hat)},
            {"beta", json_number(event.multiplicative_fit.beta_hat)},
            {"alpha", json_number(event.multiplicative_fit.alpha_hat)},
            {"n_obs", event.multiplicative_fit.n_obs}};
        ev["fits"] = fits;

        ordered_json windows = ordered_json::array();
        for (const WindowResult& wr : event.windows) {
            ordered_json w;
            w["window"] = wr.window.to_string();
            w["acar"] = json_number(wr.acar_value);
            w["car"] = json_number(wr.car_value);
            if (wr.m1) w["m1"] = verdict_json(*wr.m1);
            if (wr.m2) w["m2"] = verdict_json(*wr.m2);
            if (wr.m3) w["m3"] = verdict_json(*wr.m3);
            windows.push_back(w);
        }
        ev["windows"] = windows;
        events.push_back(ev);
    }
    j["events"] = events;

    ordered_json summaries;
    for (Method m : cfg.methods) {
        ordered_json rows = ordered_json::array();
        for (const auto& [ordinal, summary] : summarize(report, m)) {
            ordered_json row;
            row["ordinal"] = ordinal;
            row["positive_periods"] = summary.positive_periods;
            row["negative_periods"] = summary.negative_periods;
            row["no_impact"] = summary.no_impact;
            rows.push_back(row);
        }
        summaries[to_string(m)] = rows;
    }
    j["summaries"] = summaries;

    ordered_json aggregates = ordered_json::array();
    for (const AggregateStat& stat : aggregate_stats(report)) {
        ordered_json row;
        row["window"] = stat.window.to_string();
        row["k"] = stat.k;
        row["mean_acar"] = stat.mean ? json_number(*stat.mean) : ordered_json(nullptr);
        row["std_acar"] = stat.std_dev ? json_number(*stat.std_dev) : ordered_json(nullptr);
        row["z"] = stat.z ? json_number(*stat.z) : ordered_json(nullptr);
        aggregates.push_back(row);
    }
    j["aggregates"] = aggregates;

    ordered_json tables = ordered_json::array();
    const std::pair<Method, Method> pairs[] = {
        {Method::M1, Method::M2}, {Method::M1, Method::M3}, {Method::M2, Method::M3}};
    for (const auto& [a, b] : pairs) {
        if (!cfg.has_method(a) || !cfg.has_method(b)) continue;
        const CrossTable table = cross_table(report, a, b);
        ordered_json t;
        t["method_a"] = to_string(a);
        t["method_b"] = to_string(b);
        t["directions"] = {"Positive", "NoImpact", "Negative"};
        ordered_json counts = ordered_json::array();
        for (const auto& row : table.counts)
            counts.push_back({row[0], row[1], row[2]});
        t["counts"] = counts;
        t["total"] = table.total();
        if (table.total() > 0) {
            const DivergenceRates rates = divergence_rates(table);
            t["overestimate"] = rates.overestimate;
            t["underestimate"] = rates.underestimate;
        }
        tables.push_back(t);
    }
    j["cross_tables"] = tables;

    out << j.dump(2) << "\n";
}

void write_crosstab_csv(const CrossTable& table, std::ostream& out) {
    out << to_string(table.method_a) << "\\" << to_string(table.method_b);
    for (const char* label : kDirectionLabels) out << "," << label;
    out << "\n";
    for (std::size_t r = 0; r < 3; ++r) {
        out << kDirectionLabels[r];
        for (std::size_t c = 0; c < 3; ++c) out << "," << table.counts[r][c];
        out << "\n";
    }
}

void write_histogram_csv(const Histogram& histogram, std::ostream& out) {
    out << "bin_low,bin_high,count\n";
    for (const HistogramRow& row : histogram.rows)
        out << exact(row.bin_low) << "," << exact(row.bin_high) << "," << row.count << "\n";
}

std::vector<std::string> write_study_outputs(const StudyReport& report,
                                             const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<std::string> written;
    auto open = [&](const std::string& name) {
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + name + " in " + out_dir);
        written.push_back(name);
        return out;
    };

    {
        auto out = open("report.txt");
        write_report_text(report, out);
    }
    {
        auto out = open("report.json");
        write_report_json(report, out);
    }

    const std::pair<Method, Method> pairs[] = {
        {Method::M1, Method::M2}, {Method::M1, Method::M3}, {Method::M2, Method::M3}};
    for (const auto& [a, b] : pairs) {
        if (!report.config.has_method(a) || !report.config.has_method(b)) continue;
        const std::string name =
            std::string("crosstab_") + to_string(a) + "_" + to_string(b) + ".csv";
        auto out = open(name);
        write_crosstab_csv(cross_table(report, a, b), out);
    }

    // duplicate tickers disambiguate by date, then by ordinal
    std::set<std::string> used;
    for (const EventResult& event : report.events) {
        for (const WindowResult& wr : event.windows) {
            const std::pair<const std::optional<Histogram>&, const char*> captures[] = {
                {wr.additive_hist, "additive"}, {wr.multiplicative_hist, "multiplicative"}};
            for (const auto& [histogram, mode] : captures) {
                if (!histogram) continue;
                const std::string base = "hist_" + sanitize_for_filename(event.event.ticker) +
                                         "_" + window_tag(wr.window) + "_" + mode;
                std::string name = base + ".csv";
                if (used.count(name))
                    name = base + "_" + event.event.announcement_date.to_string() + ".csv";
                if (used.count(name))
                    name = base + "_" + event.event.announcement_date.to_string() + "_" +
                           std::to_string(event.ordinal) + ".csv";
                used.insert(name);
                auto out = open(name);
                write_histogram_csv(*histogram, out);
            }
        }
    }
    return written;
}

}  // namespace evstudy
