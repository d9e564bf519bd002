#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nfx/aggregate.hpp"
#include "nfx/classify.hpp"
#include "nfx/correlate.hpp"

namespace nfx {

enum class YScale { Linear, SymLog };

struct StemPlotSpec {
  int width_px = 960;
  int height_px = 400;
  std::string positive_color = "blue";
  std::string reverse_color = "red";
  std::string background = "white";
  YScale y_scale = YScale::SymLog;
  std::string title;
  MagnitudeRule rule = MagnitudeRule::AbsDeltaV;
};

/// SVG 1.1 stem plot: one <line class="stem ..."> per Positive (up) or
/// Reverse (down) day. Throws EmptyInput / InvalidArgument.
std::string render_stemplot(std::span<const DailyNfx> classified, const StemPlotSpec& spec);

enum class TableFormat { Csv, Json, Markdown };

std::string_view extension(TableFormat format) noexcept;
/// csv | json | md; throws InvalidArgument.
TableFormat parse_table_format(std::string_view text);

/// One positive and one reverse row per aggregate.
std::string emit_aggregate_table(std::span<const NfxAggregate> aggregates, TableFormat format);
std::string emit_correlation_table(std::span<const CorrelationCell> cells, TableFormat format);
/// Both tables in one document.
std::string emit_tables(std::span<const NfxAggregate> aggregates, std::span<const CorrelationCell> cells,
                        TableFormat format);

/// Row of the CSV aggregate table as read back.
struct AggregateRow {
  std::string asset_id;
  std::string pair;
  std::string rule;
  std::string sign;
  std::int64_t total_days = 0;
  std::int64_t undefined_days = 0;
  std::int64_t nfx_days = 0;
  double strength_sum = 0.0;
  double prevalence = 0.0;
  std::optional<double> relative_strength;
};

std::vector<AggregateRow> parse_aggregate_csv(std::string_view csv);

/// Per-day classification CSV: date,delta_v,delta_u,class
std::string emit_classification_csv(std::span<const DailyNfx> classified);
std::vector<DailyNfx> parse_classification_csv(std::string_view csv);

}  // namespace nfx
