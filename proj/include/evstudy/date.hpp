#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace evstudy {

/// Calendar date (proleptic Gregorian), comparable by value.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

    static bool is_leap_year(int year);
    static int days_in_month(int year, int month);

    /// Strict ISO-8601 "YYYY-MM-DD". Returns false on any deviation.
    static bool parse(std::string_view text, Date& out);
    static Date parse_or_throw(std::string_view text);

    bool valid() const;
    Date next_day() const;
    int day_of_week() const;  // 0 = Sunday .. 6 = Saturday
    bool is_weekend() const;
    std::string to_string() const;
};

}  // namespace evstudy
