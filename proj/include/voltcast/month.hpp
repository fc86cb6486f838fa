#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace voltcast {

/// A calendar month. Months are 1-based (1 = January).
struct YearMonth {
    int year = 1970;
    int month = 1;

    auto operator<=>(const YearMonth&) const = default;

    YearMonth next() const;
    YearMonth prev() const;

    /// Signed number of months from `origin` to this month.
    int months_since(YearMonth origin) const;

    /// Month that is `n` months after this one (n may be negative).
    YearMonth plus(int n) const;

    /// Formats as "YYYY-MM".
    std::string str() const;

    /// Parses "YYYY-MM". Throws Error(data) on malformed input.
    static YearMonth parse(std::string_view text);
};

/// Civil date-time at hourly resolution, timezone-naive.
struct CivilHour {
    int year = 1970;
    int month = 1;
    int day = 1;
    int hour = 0;

    YearMonth year_month() const { return {year, month}; }
    std::string str() const;
};

/// Hours since 1970-01-01T00:00. Proleptic Gregorian calendar.
std::int64_t hour_index(const CivilHour& t);
CivilHour civil_from_hour_index(std::int64_t h);

int days_in_month(int year, int month);

}  // namespace voltcast
