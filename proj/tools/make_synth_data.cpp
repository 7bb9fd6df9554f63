// Generates a synthetic daily price universe: one market index plus one CSV
// per ticker, all on a shared weekday calendar. Stock returns follow
// r = alpha + beta * r_market + noise with per-ticker parameters derived
// from the ticker name, so regeneration is reproducible file by file.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evstudy/date.hpp"
#include "evstudy/rng.hpp"
#include "evstudy/study.hpp"

namespace {

using evstudy::Date;

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

std::vector<Date> weekday_calendar(Date start, int days) {
    std::vector<Date> calendar;
    calendar.reserve(static_cast<std::size_t>(days));
    Date d = start;
    while (static_cast<int>(calendar.size()) < days) {
        if (!d.is_weekend()) calendar.push_back(d);
        d = d.next_day();
    }
    return calendar;
}

void write_prices(const std::filesystem::path& path, const std::vector<Date>& calendar,
                  const std::vector<double>& returns, double initial_price) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "date,adjusted_close\n";
    double price = initial_price;
    char buffer[32];
    for (std::size_t i = 0; i < calendar.size(); ++i) {
        if (i > 0) price *= 1.0 + returns[i];  // returns[0] is unused by construction
        std::snprintf(buffer, sizeof buffer, "%.6f", price);
        out << calendar[i].to_string() << "," << buffer << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic daily price data for event-study runs"};

    std::string out_dir;
    std::string tickers_text;
    std::string events_path;
    std::string market_name = "market";
    std::string start_text = "2009-06-01";
    int days = 2200;
    std::uint64_t seed = 1;

    app.add_option("--out", out_dir, "Output directory")->required();
    app.add_option("--tickers", tickers_text, "Comma-separated tickers to generate");
    app.add_option("--events", events_path, "Events CSV; generates every ticker it names");
    app.add_option("--market-name", market_name, "Market index file name (without .csv)")
        ->capture_default_str();
    app.add_option("--start", start_text, "First calendar day (weekends are skipped)")
        ->capture_default_str();
    app.add_option("--days", days, "Trading days to generate")->capture_default_str();
    app.add_option("--seed", seed, "Generation seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        std::set<std::string> tickers;
        std::size_t start = 0;
        while (start <= tickers_text.size()) {
            const auto comma = tickers_text.find(',', start);
            const std::string piece = tickers_text.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!piece.empty()) tickers.insert(piece);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!events_path.empty()) {
            std::ifstream in(events_path);
            if (!in) throw std::runtime_error("cannot open events file " + events_path);
            for (const evstudy::EventRecord& event : evstudy::load_events_csv(in))
                tickers.insert(event.ticker);
        }
        if (tickers.empty())
            throw std::runtime_error("no tickers requested (use --tickers or --events)");
        if (days < 2) throw std::runtime_error("need at least 2 trading days");

        const Date first_day = Date::parse_or_throw(start_text);
        const std::vector<Date> calendar = weekday_calendar(first_day, days);

        // market first; every stock is conditioned on the same index path
        std::vector<double> market_returns(calendar.size(), 0.0);
        {
            evstudy::SplitMix64 rng(
                evstudy::substream_seed(seed, fnv1a("index/" + market_name)));
            for (std::size_t i = 1; i < market_returns.size(); ++i)
                market_returns[i] = 0.0003 + 0.010 * rng.next_gaussian();
        }

        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        write_prices(fs::path(out_dir) / (market_name + ".csv"), calendar, market_returns,
                     1000.0);
        std::cout << "wrote " << out_dir << "/" << market_name << ".csv\n";

        for (const std::string& ticker : tickers) {
            const std::uint64_t traits = evstudy::mix64(fnv1a(ticker));
            const double beta = 0.6 + 0.8 * (static_cast<double>(traits >> 11) * 0x1.0p-53);
            const double alpha = 0.0002 * (static_cast<double>(evstudy::mix64(traits) >> 11) *
                                               0x1.0p-53 -
                                           0.5);
            const double noise_std =
                0.008 + 0.012 * (static_cast<double>(evstudy::mix64(traits + 1) >> 11) *
                                 0x1.0p-53);

            evstudy::SplitMix64 rng(evstudy::substream_seed(seed, fnv1a("stock/" + ticker)));
            std::vector<double> returns(calendar.size(), 0.0);
            for (std::size_t i = 1; i < returns.size(); ++i) {
                double r = alpha + beta * market_returns[i] + noise_std * rng.next_gaussian();
                if (r < -0.5) r = -0.5;  // keep gross returns comfortably positive
                returns[i] = r;
            }
            write_prices(fs::path(out_dir) / (ticker + ".csv"), calendar, returns, 50.0);
            std::cout << "wrote " << out_dir << "/" << ticker << ".csv\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
