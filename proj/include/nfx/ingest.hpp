#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nfx/date.hpp"

namespace nfx {

using RealCell = std::optional<double>;
using CountCell = std::optional<std::int64_t>;

// Vendor column names.
inline constexpr const char* kTimeColumn = "time";
inline constexpr const char* kPriceColumn = "PriceUSD";
inline constexpr const char* kTxValueColumn = "TxTfrValAdjUSD";
inline constexpr const char* kBalanceCountColumn = "AdrBalCnt";
inline constexpr const char* kActiveCountColumn = "AdrActCnt";
inline constexpr const char* kTrailingActiveColumn = "6MAdrActCnt";

struct AssetConfig {
  std::string asset_id;
  Date start_date;
  std::optional<Date> end_date;
  std::filesystem::path source_path;
  /// Optional address-level event log used to derive 6MAdrActCnt when the
  /// series file does not carry it.
  std::optional<std::filesystem::path> events_path;
};

/// Daily metric table for one asset. All columns have `dates.size()` entries;
/// an empty optional is a missing cell.
struct AssetSeries {
  std::string asset_id;
  std::vector<Date> dates;
  std::vector<RealCell> price_usd;
  std::vector<RealCell> tx_tfr_val_adj_usd;
  std::vector<CountCell> adr_bal_cnt;
  std::vector<CountCell> adr_act_cnt;
  std::optional<std::vector<CountCell>> six_m_adr_act_cnt;

  std::size_t size() const noexcept { return dates.size(); }
  bool operator==(const AssetSeries&) const = default;
};

struct ParseOptions {
  /// Insert all-missing rows for interior calendar gaps instead of failing.
  bool fill_gaps = false;
};

AssetSeries parse_series(const std::filesystem::path& path, const AssetConfig& config,
                         const ParseOptions& options = {});
AssetSeries parse_series(std::istream& in, const AssetConfig& config, const ParseOptions& options = {});

/// Writes the vendor CSV layout. Doubles use shortest round-trip formatting so
/// that parse(write(s)) == s.
void write_series(std::ostream& out, const AssetSeries& series);

/// Reads the asset roster. Blocks look like
///
///   [asset]
///   symbol = BTC
///   path = btc.csv
///   start = 2010-07-01
///   end = 2020-03-01
///   events = btc_events.csv   # optional
///
/// Relative paths are resolved against the config file's directory.
std::vector<AssetConfig> load_config(const std::filesystem::path& path);
std::vector<AssetConfig> parse_config(std::istream& in, const std::filesystem::path& base_dir);

enum class IssueKind { Missing, Zero, Negative, TrailingBelowDaily };

struct ValidationIssue {
  IssueKind kind;
  std::string column;
  std::size_t count = 0;
  /// First offending date.
  Date first;
  bool fatal = false;

  std::string message() const;
};

/// Pure report over the series; one issue per (kind, column) that occurs.
std::vector<ValidationIssue> validate_series(const AssetSeries& series);

}  // namespace nfx
