#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evstudy/report.hpp"
#include "evstudy/study.hpp"

namespace {

std::vector<evstudy::Method> parse_methods(const std::string& text) {
    std::vector<evstudy::Method> methods;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string piece =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) {
            if (piece == "m1")
                methods.push_back(evstudy::Method::M1);
            else if (piece == "m2")
                methods.push_back(evstudy::Method::M2);
            else if (piece == "m3")
                methods.push_back(evstudy::Method::M3);
            else
                throw std::runtime_error("unknown method '" + piece +
                                         "' (expected a subset of m1,m2,m3)");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return methods;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event study of announcement impact on daily stock returns"};

    std::string events_path, prices_dir, market_path;
    std::string out_dir = "out";
    std::uint64_t scenarios = 5'000'000;
    std::uint64_t seed = 0;
    double tail = 0.10;
    double z_critical = 1.282;
    std::string windows_text = "-1:1,-1:3,-1:5,-1:7,-1:9";
    std::string estimation_text = "-201:-2";
    std::string methods_text = "m1,m2,m3";
    int hist_bins = 0;
    unsigned workers = 0;

    app.add_option("--events", events_path, "Events CSV (firm,ticker,announcement_date)")
        ->required();
    app.add_option("--prices-dir", prices_dir, "Directory holding one <ticker>.csv per firm")
        ->required();
    app.add_option("--market", market_path, "Market index price CSV")->required();
    app.add_option("--scenarios", scenarios, "Resampled scenarios per distribution")
        ->capture_default_str();
    app.add_option("--seed", seed, "Master seed for scenario resampling")->capture_default_str();
    app.add_option("--tail", tail, "Tail fraction for the empirical tests")
        ->capture_default_str();
    app.add_option("--z-critical", z_critical, "Critical |Z| for the parametric test")
        ->capture_default_str();
    app.add_option("--windows", windows_text, "Event windows as comma-separated lo:hi offsets")
        ->capture_default_str();
    app.add_option("--estimation", estimation_text, "Estimation window as lo:hi offsets")
        ->capture_default_str();
    app.add_option("--methods", methods_text, "Methods to run, subset of m1,m2,m3")
        ->capture_default_str();
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--hist-bins", hist_bins, "Histogram bins per distribution (0 disables)")
        ->capture_default_str();
    app.add_option("--workers", workers,
                   "Worker threads (0 = hardware concurrency; results do not depend on this)")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        evstudy::StudyConfig config;
        config.windows.estimation = evstudy::parse_offset_range(estimation_text);
        config.windows.event_windows = evstudy::parse_offset_ranges(windows_text);
        config.scenario_count = scenarios;
        config.seed = seed;
        config.test.z_critical = z_critical;
        config.test.tail_fraction = tail;
        config.methods = parse_methods(methods_text);
        config.hist_bins = hist_bins;
        config.workers = workers;
        config.validate();

        std::ifstream events_in(events_path);
        if (!events_in) throw std::runtime_error("cannot open events file " + events_path);
        const std::vector<evstudy::EventRecord> events = evstudy::load_events_csv(events_in);

        const evstudy::StudyReport report =
            evstudy::run_study(events, prices_dir, market_path, config);

        std::size_t skipped = 0;
        for (const evstudy::EventResult& event : report.events)
            if (event.skipped) ++skipped;

        for (const std::string& name : evstudy::write_study_outputs(report, out_dir))
            std::cout << "wrote " << out_dir << "/" << name << "\n";
        std::cout << "events: " << report.events.size() << " total, "
                  << report.events.size() - skipped << " summarized, " << skipped
                  << " skipped\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
