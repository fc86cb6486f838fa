#include "voltcast/month.hpp"

#include <charconv>
#include <cstdio>

#include "voltcast/error.hpp"

namespace voltcast {

YearMonth YearMonth::next() const {
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

YearMonth YearMonth::prev() const {
    return month == 1 ? YearMonth{year - 1, 12} : YearMonth{year, month - 1};
}

int YearMonth::months_since(YearMonth origin) const {
    return (year - origin.year) * 12 + (month - origin.month);
}

YearMonth YearMonth::plus(int n) const {
    int idx = year * 12 + (month - 1) + n;
    int y = idx / 12;
    int m = idx % 12;
    if (m < 0) {
        m += 12;
        --y;
    }
    return {y, m + 1};
}

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-')
        throw data_error("expected YYYY-MM, got '" + std::string(text) + "'");
    YearMonth ym;
    auto r1 = std::from_chars(text.data(), text.data() + 4, ym.year);
    auto r2 = std::from_chars(text.data() + 5, text.data() + 7, ym.month);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || r1.ptr != text.data() + 4 ||
        r2.ptr != text.data() + 7 || ym.month < 1 || ym.month > 12)
        throw data_error("expected YYYY-MM, got '" + std::string(text) + "'");
    return ym;
}

std::string CivilHour::str() const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:00", year, month, day, hour);
    return buf;
}

namespace {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

std::int64_t hour_index(const CivilHour& t) {
    return days_from_civil(t.year, t.month, t.day) * 24 + t.hour;
}

CivilHour civil_from_hour_index(std::int64_t h) {
    std::int64_t days = h / 24;
    int hour = static_cast<int>(h % 24);
    if (hour < 0) {
        hour += 24;
        --days;
    }
    CivilHour out;
    civil_from_days(days, out.year, out.month, out.day);
    out.hour = hour;
    return out;
}

int days_in_month(int year, int month) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[month - 1];
}

}  // namespace voltcast
