#include "voltcast/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "voltcast/error.hpp"

namespace voltcast {

namespace {

constexpr std::size_t kMaxRejectSamples = 50;

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) fields.push_back(field);
    if (!line.empty() && line.back() == delim) fields.push_back("");
    return fields;
}

std::string strip(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c); };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

bool parse_int(std::string_view s, int& out) {
    auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

// Accepts "YYYY-MM-DD HH:MM[:SS]" and ISO-8601 "YYYY-MM-DDTHH:MM[:SS]".
// Minutes and seconds must be zero (hourly resolution).
bool parse_timestamp(const std::string& text, CivilHour& out, std::string& why) {
    const std::string s = strip(text);
    if (s.size() < 16 || s[4] != '-' || s[7] != '-' || (s[10] != ' ' && s[10] != 'T') ||
        s[13] != ':') {
        why = "bad timestamp format";
        return false;
    }
    int minute = 0, second = 0;
    if (!parse_int(s.substr(0, 4), out.year) || !parse_int(s.substr(5, 2), out.month) ||
        !parse_int(s.substr(8, 2), out.day) || !parse_int(s.substr(11, 2), out.hour) ||
        !parse_int(s.substr(14, 2), minute)) {
        why = "bad timestamp format";
        return false;
    }
    if (s.size() >= 19 && s[16] == ':' && !parse_int(s.substr(17, 2), second)) {
        why = "bad timestamp format";
        return false;
    }
    if (out.month < 1 || out.month > 12 || out.day < 1 || out.day > days_in_month(out.year, out.month) ||
        out.hour < 0 || out.hour > 23) {
        why = "timestamp out of range";
        return false;
    }
    if (minute != 0 || second != 0) {
        why = "timestamp is not on the hour";
        return false;
    }
    return true;
}

bool parse_load(const std::string& text, double& out, std::string& why) {
    const std::string s = strip(text);
    if (s.empty()) {
        why = "empty load value";
        return false;
    }
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        why = "bad load value '" + s + "'";
        return false;
    }
    if (!std::isfinite(out) || out <= 0.0) {
        why = "load must be finite and > 0";
        return false;
    }
    return true;
}

void format_double(std::ostream& out, double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, r.ptr - buf);
}

}  // namespace

ParseResult parse_hourly_csv(std::istream& source, const ColumnSchema& schema) {
    std::string line;
    if (!std::getline(source, line)) throw data_error("hourly input is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_line(line, schema.delimiter);
    std::ptrdiff_t ts_idx = -1, load_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = strip(header[i]);
        if (name == schema.ts_col) ts_idx = static_cast<std::ptrdiff_t>(i);
        if (name == schema.load_col) load_idx = static_cast<std::ptrdiff_t>(i);
    }
    if (ts_idx < 0)
        throw data_error("hourly input header has no '" + schema.ts_col + "' column");
    if (load_idx < 0)
        throw data_error("hourly input header has no '" + schema.load_col + "' column");

    ParseResult result;
    result.series.timezone = schema.timezone;
    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (strip(line).empty()) continue;
        ++result.report.rows_read;

        auto reject = [&](const std::string& why) {
            ++result.report.rows_rejected;
            if (result.report.rejects.size() < kMaxRejectSamples)
                result.report.rejects.push_back({line_no, why});
        };

        auto fields = split_line(line, schema.delimiter);
        if (static_cast<std::size_t>(std::max(ts_idx, load_idx)) >= fields.size()) {
            reject("too few fields");
            continue;
        }
        CivilHour ts;
        double load = 0.0;
        std::string why;
        if (!parse_timestamp(fields[static_cast<std::size_t>(ts_idx)], ts, why)) {
            reject(why);
            continue;
        }
        if (!parse_load(fields[static_cast<std::size_t>(load_idx)], load, why)) {
            reject(why);
            continue;
        }
        result.series.records.push_back({hour_index(ts), load});
    }

    if (result.series.records.empty())
        throw data_error("hourly input has no valid rows (" +
                         std::to_string(result.report.rows_rejected) + " rejected)");

    std::stable_sort(result.series.records.begin(), result.series.records.end(),
                     [](const HourlyRecord& a, const HourlyRecord& b) { return a.hour < b.hour; });
    return result;
}

CleanResult clean_series(const HourlySeries& series, const CleaningPolicy& policy) {
    if (series.empty()) throw data_error("clean_series: empty series");

    CleanResult result;
    result.series.timezone = series.timezone;
    auto& records = result.series.records;
    records.reserve(series.records.size());

    // Pass 1: collapse duplicate timestamps.
    for (std::size_t i = 0; i < series.records.size();) {
        std::size_t j = i + 1;
        double sum = series.records[i].load_mw;
        while (j < series.records.size() && series.records[j].hour == series.records[i].hour) {
            sum += series.records[j].load_mw;
            ++j;
        }
        const int count = static_cast<int>(j - i);
        if (count > 1) {
            result.report.duplicates.push_back({series.records[i].hour, count});
            double value = policy.duplicates == DuplicatePolicy::average
                               ? sum / count
                               : series.records[i].load_mw;
            records.push_back({series.records[i].hour, value});
        } else {
            records.push_back(series.records[i]);
        }
        i = j;
    }

    // Pass 2: fill or report gaps.
    std::vector<HourlyRecord> filled;
    filled.reserve(records.size());
    const int month_hours = 31 * 24;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0) {
            std::int64_t prev = records[i - 1].hour;
            auto missing = records[i].hour - prev - 1;
            if (missing > 0) {
                GapNote note{prev + 1, static_cast<int>(missing), false};
                if (missing <= policy.max_gap_hours) {
                    double lo = records[i - 1].load_mw;
                    double hi = records[i].load_mw;
                    for (std::int64_t k = 1; k <= missing; ++k) {
                        double f = static_cast<double>(k) / static_cast<double>(missing + 1);
                        filled.push_back({prev + k, lo + f * (hi - lo)});
                    }
                    note.filled = true;
                    result.report.interpolated_records += static_cast<std::size_t>(missing);
                } else if (missing > month_hours && !policy.allow_long_gaps) {
                    throw data_error("gap of " + std::to_string(missing) + " hours starting " +
                                     civil_from_hour_index(prev + 1).str() +
                                     " exceeds one month; rerun with allow_long_gaps to keep it");
                }
                result.report.gaps.push_back(note);
            }
        }
        filled.push_back(records[i]);
    }
    result.series.records = std::move(filled);
    return result;
}

MonthlySeries aggregate_monthly(const HourlySeries& series, Aggregation mode) {
    if (series.empty()) throw data_error("aggregate_monthly: empty series");

    // Month buckets keyed by linear month index; input is time-sorted.
    std::map<int, std::vector<double>> buckets;
    const YearMonth origin = civil_from_hour_index(series.records.front().hour).year_month();
    for (const auto& rec : series.records) {
        YearMonth ym = civil_from_hour_index(rec.hour).year_month();
        buckets[ym.months_since(origin)].push_back(rec.load_mw);
    }

    const int last = buckets.rbegin()->first;
    MonthlySeries out;
    out.start = origin;
    out.aggregation = mode;
    out.values.reserve(static_cast<std::size_t>(last) + 1);
    for (int m = 0; m <= last; ++m) {
        auto it = buckets.find(m);
        if (it == buckets.end())
            throw data_error("aggregate_monthly: month " + origin.plus(m).str() +
                             " has no records");
        const auto& loads = it->second;
        double v = 0.0;
        switch (mode) {
            case Aggregation::peak:
                v = *std::max_element(loads.begin(), loads.end());
                break;
            case Aggregation::minimum:
                v = *std::min_element(loads.begin(), loads.end());
                break;
            case Aggregation::sum:
                for (double x : loads) v += x;
                break;
            case Aggregation::mean:
                for (double x : loads) v += x;
                v /= static_cast<double>(loads.size());
                break;
        }
        out.values.push_back(v);
    }
    return out;
}

void write_hourly_csv(std::ostream& out, const HourlySeries& series, const ColumnSchema& schema) {
    out << schema.ts_col << schema.delimiter << schema.load_col << '\n';
    for (const auto& rec : series.records) {
        out << rec.civil().str() << schema.delimiter;
        format_double(out, rec.load_mw);
        out << '\n';
    }
}

void write_monthly_csv(std::ostream& out, const MonthlySeries& series) {
    out << "year,month,value\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        YearMonth ym = series.month_at(i);
        out << ym.year << ',' << ym.month << ',';
        format_double(out, series.values[i]);
        out << '\n';
    }
}

MonthlySeries read_monthly_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("monthly input is empty");

    MonthlySeries out;
    bool first = true;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (strip(line).empty()) continue;
        auto fields = split_line(line, ',');
        if (fields.size() != 3)
            throw data_error("monthly input line " + std::to_string(line_no) +
                             ": expected year,month,value");
        YearMonth ym;
        double v = 0.0;
        std::string why;
        if (!parse_int(strip(fields[0]), ym.year) || !parse_int(strip(fields[1]), ym.month) ||
            ym.month < 1 || ym.month > 12)
            throw data_error("monthly input line " + std::to_string(line_no) + ": bad year/month");
        const std::string vs = strip(fields[2]);
        char* end = nullptr;
        v = std::strtod(vs.c_str(), &end);
        if (end != vs.c_str() + vs.size() || !std::isfinite(v))
            throw data_error("monthly input line " + std::to_string(line_no) + ": bad value");
        if (first) {
            out.start = ym;
            first = false;
        } else if (ym != out.start.plus(static_cast<int>(out.values.size()))) {
            throw data_error("monthly input line " + std::to_string(line_no) +
                             ": months are not consecutive");
        }
        out.values.push_back(v);
    }
    if (out.values.empty()) throw data_error("monthly input has no rows");
    return out;
}

}  // namespace voltcast
