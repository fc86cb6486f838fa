#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "json.hpp"
#include "voltcast/ingest.hpp"
#include "voltcast/memforecast.hpp"
#include "voltcast/series_ops.hpp"
#include "voltcast/stattests.hpp"

namespace voltcast {

/// Versioned model document exchanged between `fit` and `forecast`.
inline constexpr const char* kModelFormat = "voltcast-model";
inline constexpr int kModelVersion = 1;

nlohmann::json to_json(const SummaryStats& stats);
nlohmann::json to_json(const TestResult& result);
nlohmann::json to_json(std::span<const CorrelogramPoint> points);
nlohmann::json to_json(const ParseReport& report);
nlohmann::json to_json(const CleaningReport& report);
nlohmann::json to_json(const ParamStat& row);

nlohmann::json mem_model_to_json(const MemModel& model);
MemModel mem_model_from_json(const nlohmann::json& doc);

nlohmann::json backtest_to_json(const BacktestReport& report);

void write_forecast_csv(std::ostream& out, const ForecastResult& forecast);
void write_backtest_csv(std::ostream& out, const BacktestReport& report);

/// Plot-ready delimited dumps.
void write_correlogram_csv(std::ostream& out, std::span<const CorrelogramPoint> points);
void write_stats_csv(std::ostream& out,
                     std::span<const std::pair<std::string, SummaryStats>> rows);

}  // namespace voltcast
