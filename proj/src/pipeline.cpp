#include "nfx/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>

#include <fmt/format.h>

#include "nfx/error.hpp"

namespace nfx {

namespace fs = std::filesystem;

AssetSeries load_asset(const AssetConfig& config, WindowSpec window, bool fill_gaps) {
  auto series = parse_series(config.source_path, config, ParseOptions{fill_gaps});
  if (!series.six_m_adr_act_cnt && config.events_path) {
    const auto events = read_events(*config.events_path);
    attach_trailing_active(series, intern(events), window);
  }
  return series;
}

namespace {

struct AssetResult {
  AssetSeries series;
  std::vector<std::pair<ProxyPair, std::vector<DailyNfx>>> classified;
  std::vector<NfxAggregate> aggregates;
};

AssetResult process_asset(const AssetConfig& config, const RunManifest& manifest) {
  AssetResult out;
  try {
    out.series = load_asset(config, manifest.window, manifest.fill_gaps);
  } catch (const Error& e) {
    fail(e.code(), fmt::format("asset {}: {}", config.asset_id, e.what()));
  }
  for (const auto& pair : manifest.pairs) {
    try {
      auto days = classify_series(out.series, pair);
      out.aggregates.push_back(aggregate(days, manifest.rule, config.asset_id, pair));
      out.classified.emplace_back(pair, std::move(days));
    } catch (const Error& e) {
      fail(e.code(), fmt::format("asset {} pair {}: {}", config.asset_id, to_string(pair), e.what()));
    }
  }
  return out;
}

std::string stem(const std::string& asset, ProxyPair pair) {
  return fmt::format("{}_{}_{}", asset, short_name(pair.value), short_name(pair.user));
}

class OutputTree {
 public:
  explicit OutputTree(fs::path root) : root_(std::move(root)) {}

  void write(const fs::path& relative, std::string_view content) {
    const auto path = root_ / relative;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorCode::Io, fmt::format("cannot create directory '{}': {}", path.parent_path().string(), ec.message()));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, fmt::format("cannot write '{}'", path.string()));
    written_.push_back(relative);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorCode::Io, fmt::format("short write to '{}'", path.string()));
  }

  void remove_all_written() noexcept {
    std::error_code ec;
    for (const auto& rel : written_) fs::remove(root_ / rel, ec);
    for (const char* dir : {"classification", "plots"}) {
      if (fs::is_empty(root_ / dir, ec)) fs::remove(root_ / dir, ec);
    }
    written_.clear();
  }

  std::vector<fs::path> written() const {
    auto out = written_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  fs::path root_;
  std::vector<fs::path> written_;
};

std::string strength_ratio_csv(std::span<const NfxAggregate> aggregates) {
  std::string out = "asset,user_proxy,rule,positive_ratio,reverse_ratio\n";
  const auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); };
  for (const auto& by_price : aggregates) {
    if (by_price.pair.value != ValueProxy::TokenPrice) continue;
    for (const auto& by_txval : aggregates) {
      if (by_txval.asset_id != by_price.asset_id || by_txval.pair.value != ValueProxy::TransactionValue ||
          by_txval.pair.user != by_price.pair.user) {
        continue;
      }
      const auto ratio = strength_ratio(by_price, by_txval);
      out += fmt::format("{},{},{},{},{}\n", by_price.asset_id, short_name(by_price.pair.user),
                         to_string(by_price.rule), opt(ratio.positive), opt(ratio.reverse));
    }
  }
  return out;
}

}  // namespace

RunResult run_pipeline(const RunManifest& manifest) {
  if (manifest.pairs.empty()) fail(ErrorCode::InvalidArgument, "no proxy pairs selected");
  if (manifest.formats.empty()) fail(ErrorCode::InvalidArgument, "no output formats selected");
  if (manifest.window.length_days < 1) fail(ErrorCode::InvalidArgument, "window must be at least 1 day");
  if (manifest.output_dir.empty()) fail(ErrorCode::InvalidArgument, "no output directory");

  const auto configs = load_config(manifest.config_path);
  if (configs.empty()) fail(ErrorCode::InvalidConfig, "config defines no assets");

  std::vector<std::future<AssetResult>> jobs;
  jobs.reserve(configs.size());
  for (const auto& cfg : configs) {
    jobs.push_back(std::async(std::launch::async, [&cfg, &manifest] { return process_asset(cfg, manifest); }));
  }
  // Collect in config order so output never depends on scheduling.
  std::vector<AssetResult> assets;
  std::optional<Error> first_error;
  for (auto& job : jobs) {
    try {
      assets.push_back(job.get());
    } catch (const Error& e) {
      if (!first_error) first_error = e;
    }
  }
  if (first_error) throw *first_error;

  RunResult result;
  std::vector<AssetSeries> all_series;
  for (auto& a : assets) {
    for (auto& agg : a.aggregates) result.aggregates.push_back(std::move(agg));
    all_series.push_back(a.series);
  }
  result.correlations = correlation_table(all_series, CorrelationOptions{manifest.log_levels, manifest.pairs});

  OutputTree tree(manifest.output_dir);
  try {
    for (const auto& a : assets) {
      for (const auto& [pair, days] : a.classified) {
        const auto name = stem(a.series.asset_id, pair);
        tree.write(fs::path("classification") / (name + ".csv"), emit_classification_csv(days));
        auto spec = manifest.plot;
        spec.rule = manifest.rule;
        if (spec.title.empty()) {
          spec.title = fmt::format("{}: {} vs {}", a.series.asset_id, column_name(pair.value), column_name(pair.user));
        }
        tree.write(fs::path("plots") / (name + ".svg"), render_stemplot(days, spec));
      }
    }
    for (auto format : manifest.formats) {
      tree.write(fmt::format("aggregates.{}", extension(format)), emit_aggregate_table(result.aggregates, format));
      tree.write(fmt::format("correlations.{}", extension(format)),
                 emit_correlation_table(result.correlations, format));
    }
    tree.write("strength_ratios.csv", strength_ratio_csv(result.aggregates));
  } catch (...) {
    tree.remove_all_written();
    throw;
  }
  result.written = tree.written();
  return result;
}

}  // namespace nfx
