#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "evstudy/date.hpp"
#include "evstudy/timeseries.hpp"

using namespace evstudy;

// ============================================================================
// Dates
// ============================================================================

TEST_CASE("date parsing is strict ISO and round-trips") {
    Date d{};
    REQUIRE(Date::parse("2012-03-09", d));
    CHECK(d.year == 2012);
    CHECK(d.month == 3);
    CHECK(d.day == 9);
    CHECK(d.to_string() == "2012-03-09");

    CHECK_FALSE(Date::parse("2012-3-09", d));
    CHECK_FALSE(Date::parse("2012/03/09", d));
    CHECK_FALSE(Date::parse("12-03-09", d));
    CHECK_FALSE(Date::parse("2012-03-09x", d));
    CHECK_FALSE(Date::parse("2012-13-01", d));
    CHECK_FALSE(Date::parse("2012-00-01", d));
    CHECK_FALSE(Date::parse("2012-02-30", d));
    CHECK_FALSE(Date::parse("", d));

    CHECK_THROWS_AS(Date::parse_or_throw("not-a-date"), std::runtime_error);
}

TEST_CASE("date handles leap years") {
    Date d{};
    CHECK(Date::parse("2012-02-29", d));
    CHECK(Date::parse("2000-02-29", d));
    CHECK_FALSE(Date::parse("2011-02-29", d));
    CHECK_FALSE(Date::parse("1900-02-29", d));
}

TEST_CASE("date ordering and day stepping") {
    const Date a = Date::parse_or_throw("2015-12-31");
    const Date b = Date::parse_or_throw("2016-01-01");
    CHECK(a < b);
    CHECK(a.next_day() == b);

    const Date feb28 = Date::parse_or_throw("2016-02-28");
    CHECK(feb28.next_day() == Date::parse_or_throw("2016-02-29"));
    CHECK(feb28.next_day().next_day() == Date::parse_or_throw("2016-03-01"));
}

TEST_CASE("weekday computation matches known anchors") {
    // 1970-01-01 was a Thursday, 2026-08-16 a Sunday.
    CHECK(Date::parse_or_throw("1970-01-01").day_of_week() == 4);
    CHECK(Date::parse_or_throw("2026-08-16").day_of_week() == 0);
    CHECK(Date::parse_or_throw("2026-08-16").is_weekend());
    CHECK(Date::parse_or_throw("2010-12-07").day_of_week() == 2);
    CHECK_FALSE(Date::parse_or_throw("2010-12-07").is_weekend());
}

// ============================================================================
// Price CSV loading
// ============================================================================

TEST_CASE("price CSV loads and sorts by date") {
    std::istringstream in(
        "date,adjusted_close\n"
        "2012-01-04,101.5\n"
        "2012-01-02,100.0\n"
        "2012-01-03,99.25\n");
    const PriceSeries series = load_price_csv(in, "ACME");
    REQUIRE(series.observations.size() == 3);
    CHECK(series.instrument_id == "ACME");
    CHECK(series.observations[0].date.to_string() == "2012-01-02");
    CHECK(series.observations[1].date.to_string() == "2012-01-03");
    CHECK(series.observations[2].date.to_string() == "2012-01-04");
    CHECK(series.observations[2].adjusted_close == doctest::Approx(101.5));
}

TEST_CASE("price CSV tolerates blank lines and CRLF") {
    std::istringstream in(
        "date,adjusted_close\r\n"
        "2012-01-02,100.0\r\n"
        "\r\n"
        "2012-01-03,101.0\r\n");
    CHECK(load_price_csv(in).observations.size() == 2);
}

TEST_CASE("price CSV rejects malformed input with line context") {
    auto load = [](const char* text) {
        std::istringstream in(text);
        return load_price_csv(in);
    };

    CHECK_THROWS_WITH_AS(load(""), "empty price CSV", std::runtime_error);
    CHECK_THROWS_WITH_AS(load("date,close\n2012-01-02,1\n"),
                         doctest::Contains("expected date,adjusted_close"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load("date,adjusted_close\n2012-01-02\n"),
                         doctest::Contains("malformed row at line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load("date,adjusted_close\n2012-01-02,1,2\n"),
                         doctest::Contains("malformed row at line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load("date,adjusted_close\n2012-1-02,100\n"),
                         doctest::Contains("bad date '2012-1-02' at line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load("date,adjusted_close\n2012-01-02,abc\n"),
                         doctest::Contains("line 2"), std::runtime_error);
    CHECK_THROWS_WITH_AS(load("date,adjusted_close\n2012-01-02,0\n"),
                         doctest::Contains("non-positive price at line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load("date,adjusted_close\n2012-01-02,-3\n"),
                         doctest::Contains("non-positive price at line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(
        load("date,adjusted_close\n2012-01-03,1\n2012-01-03,2\n"),
        doctest::Contains("duplicate date 2012-01-03 at line 3"),
        std::runtime_error);
}

// ============================================================================
// Returns and alignment
// ============================================================================

namespace {

PriceSeries prices_of(std::string id, std::initializer_list<const char*> dates,
                      std::initializer_list<double> closes) {
    PriceSeries s;
    s.instrument_id = std::move(id);
    auto c = closes.begin();
    for (const char* d : dates)
        s.observations.push_back({Date::parse_or_throw(d), *c++});
    return s;
}

}  // namespace

TEST_CASE("simple returns are dated at the later observation") {
    const PriceSeries prices = prices_of(
        "ACME", {"2012-01-02", "2012-01-03", "2012-01-04"}, {100.0, 110.0, 99.0});
    const ReturnSeries returns = compute_returns(prices);
    REQUIRE(returns.observations.size() == 2);
    CHECK(returns.observations[0].date.to_string() == "2012-01-03");
    CHECK(returns.observations[0].value == doctest::Approx(0.10).epsilon(1e-12));
    CHECK(returns.observations[1].value == doctest::Approx(-0.10).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(compute_returns(PriceSeries{}),
                         doctest::Contains("empty price series"),
                         std::runtime_error);
}

TEST_CASE("alignment keeps only shared dates") {
    const ReturnSeries stock = compute_returns(prices_of(
        "S", {"2012-01-02", "2012-01-03", "2012-01-04", "2012-01-06"},
        {100, 101, 102, 103}));
    const ReturnSeries market = compute_returns(prices_of(
        "M", {"2012-01-02", "2012-01-03", "2012-01-05", "2012-01-06"},
        {50, 51, 52, 53}));

    const AlignedReturns aligned = align(stock, market);
    REQUIRE(aligned.size() == 2);
    CHECK(aligned.rows[0].date.to_string() == "2012-01-03");
    CHECK(aligned.rows[1].date.to_string() == "2012-01-06");
    CHECK(aligned.rows[0].stock_return == doctest::Approx(0.01));
    CHECK(aligned.rows[0].market_return == doctest::Approx(0.02));
}

TEST_CASE("alignment with disjoint dates names both series") {
    const ReturnSeries a = compute_returns(
        prices_of("AAA", {"2012-01-02", "2012-01-03"}, {1, 2}));
    const ReturnSeries b = compute_returns(
        prices_of("BBB", {"2013-01-02", "2013-01-03"}, {1, 2}));
    CHECK_THROWS_WITH_AS(align(a, b),
                         doctest::Contains("empty date intersection"),
                         std::runtime_error);
    try {
        align(a, b);
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        CHECK(what.find("AAA") != std::string::npos);
        CHECK(what.find("BBB") != std::string::npos);
    }
}

namespace {

AlignedReturns aligned_days(int count) {
    AlignedReturns a;
    Date d = Date::parse_or_throw("2012-01-02");
    for (int i = 0; i < count; ++i) {
        while (d.is_weekend()) d = d.next_day();
        a.rows.push_back({d, 0.001 * i, 0.0005 * i});
        d = d.next_day();
    }
    return a;
}

}  // namespace

TEST_CASE("event day is the first trading day on or after the announcement") {
    const AlignedReturns a = aligned_days(10);
    // Rows start Monday 2012-01-02; 2012-01-07 is a Saturday.
    CHECK(locate_event(a, Date::parse_or_throw("2012-01-04")) == 2);
    CHECK(locate_event(a, Date::parse_or_throw("2012-01-07")) == 5);
    CHECK(locate_event(a, Date::parse_or_throw("2011-12-25")) == 0);
    CHECK_THROWS_WITH_AS(locate_event(a, Date::parse_or_throw("2012-02-01")),
                         doctest::Contains("beyond data range"),
                         std::runtime_error);
}

TEST_CASE("window slicing is relative to the event row") {
    const AlignedReturns a = aligned_days(10);
    const std::size_t event = 5;

    const AlignedReturns w = slice_window(a, event, OffsetRange{-2, 1});
    REQUIRE(w.size() == 4);
    CHECK(w.rows.front().date == a.rows[3].date);
    CHECK(w.rows.back().date == a.rows[6].date);

    CHECK_THROWS_WITH_AS(slice_window(a, event, OffsetRange{-6, 0}),
                         doctest::Contains("insufficient history"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(slice_window(a, event, OffsetRange{-1, 5}),
                         doctest::Contains("insufficient post-event data"),
                         std::runtime_error);
}

// ============================================================================
// Offset ranges and window specs
// ============================================================================

TEST_CASE("offset ranges parse lo:hi") {
    const OffsetRange r = parse_offset_range("-201:-2");
    CHECK(r.lo == -201);
    CHECK(r.hi == -2);
    CHECK(r.length() == 200);
    CHECK(r.to_string() == "-201:-2");

    const auto many = parse_offset_ranges("-1:1,-1:3");
    REQUIRE(many.size() == 2);
    CHECK(many[1] == OffsetRange{-1, 3});

    CHECK_THROWS_WITH_AS(parse_offset_range("nope"),
                         doctest::Contains("expected lo:hi"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_offset_range("5:2"), doctest::Contains("lo > hi"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_offset_ranges(","),
                         doctest::Contains("no offset ranges"),
                         std::runtime_error);
}

TEST_CASE("window spec defaults are valid and overlap is rejected") {
    WindowSpec spec;
    CHECK(spec.estimation == OffsetRange{-201, -2});
    REQUIRE(spec.event_windows.size() == 5);
    CHECK(spec.event_windows.front() == OffsetRange{-1, 1});
    CHECK(spec.event_windows.back() == OffsetRange{-1, 9});
    CHECK_NOTHROW(spec.validate());

    spec.estimation = OffsetRange{-201, -1};
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("does not precede"),
                         std::runtime_error);
}
