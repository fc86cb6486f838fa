#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "voltcast/hourly.hpp"
#include "voltcast/monthly.hpp"

namespace voltcast {

/// Column mapping for delimited hourly input. The file must carry a header
/// row naming at least the timestamp and load columns.
struct ColumnSchema {
    std::string ts_col = "timestamp";
    std::string load_col = "load_mw";
    char delimiter = ',';
    std::string timezone = "local";
};

struct RejectedRow {
    std::size_t line = 0;  // 1-based, header is line 1
    std::string reason;
};

struct ParseReport {
    std::size_t rows_read = 0;
    std::size_t rows_rejected = 0;
    std::vector<RejectedRow> rejects;  // capped; rows_rejected is the full count
};

struct ParseResult {
    HourlySeries series;
    ParseReport report;
};

enum class DuplicatePolicy { keep_first, average };

struct CleaningPolicy {
    DuplicatePolicy duplicates = DuplicatePolicy::average;
    /// Gaps up to this many missing hours are filled by linear interpolation.
    int max_gap_hours = 6;
    /// When false, a gap longer than one calendar month is fatal.
    bool allow_long_gaps = false;
};

struct GapNote {
    std::int64_t start_hour = 0;  // first missing hour
    int length = 0;               // missing hours
    bool filled = false;
};

struct DuplicateNote {
    std::int64_t hour = 0;
    int count = 0;  // records that shared the timestamp
};

struct CleaningReport {
    std::vector<DuplicateNote> duplicates;
    std::vector<GapNote> gaps;
    std::size_t interpolated_records = 0;

    bool empty() const { return duplicates.empty() && gaps.empty(); }
};

struct CleanResult {
    HourlySeries series;
    CleaningReport report;
};

/// Parses delimited hourly text. Rows that fail to parse are reported with
/// their line number and skipped; an empty file (or one with no valid rows)
/// is fatal. Records are returned sorted by timestamp; exact duplicate
/// timestamps survive parsing and are left to clean_series.
ParseResult parse_hourly_csv(std::istream& source, const ColumnSchema& schema = {});

/// Resolves duplicate timestamps and fills short gaps per policy. Idempotent:
/// a clean series passes through unchanged with an empty report.
CleanResult clean_series(const HourlySeries& series, const CleaningPolicy& policy = {});

/// One value per calendar month: max, min, sum, or mean of the month's loads.
/// A month in range with zero records is fatal.
MonthlySeries aggregate_monthly(const HourlySeries& series, Aggregation mode);

/// Round-trip serialization of hourly records (shortest-roundtrip doubles).
void write_hourly_csv(std::ostream& out, const HourlySeries& series,
                      const ColumnSchema& schema = {});

/// Monthly series as `year,month,value` rows.
void write_monthly_csv(std::ostream& out, const MonthlySeries& series);
MonthlySeries read_monthly_csv(std::istream& in);

}  // namespace voltcast
