#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "nfx/aggregate.hpp"
#include "nfx/classify.hpp"
#include "nfx/correlate.hpp"
#include "nfx/ingest.hpp"
#include "nfx/ledger.hpp"
#include "nfx/report.hpp"

namespace nfx {

struct RunManifest {
  std::filesystem::path config_path;
  std::vector<ProxyPair> pairs = all_pairs();
  MagnitudeRule rule = MagnitudeRule::AbsDeltaV;
  WindowSpec window;
  std::filesystem::path output_dir;
  std::set<TableFormat> formats{TableFormat::Csv};
  bool fill_gaps = false;
  bool log_levels = false;
  StemPlotSpec plot;
};

/// Loads one configured asset: parses the series and, when 6MAdrActCnt is
/// missing and an event log is configured, derives it.
AssetSeries load_asset(const AssetConfig& config, WindowSpec window, bool fill_gaps);

struct RunResult {
  std::vector<std::filesystem::path> written;  // relative to output_dir, sorted
  std::vector<NfxAggregate> aggregates;
  std::vector<CorrelationCell> correlations;
};

/// Full pipeline. Output layout under `output_dir`:
///
///   classification/<ASSET>_<value>_<user>.csv
///   plots/<ASSET>_<value>_<user>.svg
///   aggregates.<ext>, correlations.<ext>      (one per format)
///   strength_ratios.csv
///
/// Errors are rethrown as nfx::Error with the asset (and pair) in the message;
/// files written by this call are removed first.
RunResult run_pipeline(const RunManifest& manifest);

}  // namespace nfx
