#include "evstudy/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace evstudy {

bool Date::is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int Date::days_in_month(int year, int month) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

namespace {

bool parse_int_field(std::string_view text, int& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

// days since 1970-01-01 for a civil date (Howard Hinnant's algorithm)
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

}  // namespace

bool Date::parse(std::string_view text, Date& out) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    Date d;
    if (!parse_int_field(text.substr(0, 4), d.year)) return false;
    if (!parse_int_field(text.substr(5, 2), d.month)) return false;
    if (!parse_int_field(text.substr(8, 2), d.day)) return false;
    if (!d.valid()) return false;
    out = d;
    return true;
}

Date Date::parse_or_throw(std::string_view text) {
    Date d;
    if (!parse(text, d))
        throw std::runtime_error("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    return d;
}

Date Date::next_day() const {
    Date d = *this;
    if (++d.day > days_in_month(d.year, d.month)) {
        d.day = 1;
        if (++d.month > 12) {
            d.month = 1;
            ++d.year;
        }
    }
    return d;
}

int Date::day_of_week() const {
    long z = days_from_civil(year, month, day);
    return static_cast<int>((z % 7 + 11) % 7);  // 1970-01-01 was a Thursday (4)
}

bool Date::is_weekend() const {
    int dow = day_of_week();
    return dow == 0 || dow == 6;
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

}  // namespace evstudy
