// nfx: network-effect measurements for daily cryptoasset time series.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nfx/aggregate.hpp"
#include "nfx/classify.hpp"
#include "nfx/correlate.hpp"
#include "nfx/error.hpp"
#include "nfx/ingest.hpp"
#include "nfx/ledger.hpp"
#include "nfx/pipeline.hpp"
#include "nfx/report.hpp"
#include "nfx/synth.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitCompute = 2;

struct GlobalFlags {
  std::int32_t window_days = 183;
  std::string magnitude_rule = "abs-dv";
  bool fill_gaps = false;
  bool log_levels = false;
  std::uint64_t seed = 1;
};

std::vector<nfx::ProxyPair> parse_pairs(const std::vector<std::string>& texts) {
  if (texts.empty()) return nfx::all_pairs();
  std::vector<nfx::ProxyPair> pairs;
  for (const auto& t : texts) {
    const auto p = nfx::parse_pair(t);
    if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
  }
  return pairs;
}

std::set<nfx::TableFormat> parse_formats(const std::vector<std::string>& texts) {
  std::set<nfx::TableFormat> out;
  for (const auto& t : texts) out.insert(nfx::parse_table_format(t));
  if (out.empty()) out.insert(nfx::TableFormat::Csv);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) nfx::fail(nfx::ErrorCode::Io, fmt::format("cannot write '{}'", path));
  out << content;
}

const nfx::AssetConfig& find_asset(const std::vector<nfx::AssetConfig>& configs, const std::string& id) {
  for (const auto& c : configs) {
    if (c.asset_id == id) return c;
  }
  nfx::fail(nfx::ErrorCode::InvalidArgument, fmt::format("asset '{}' is not in the config", id));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network-effect measurements for daily cryptoasset time series"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--window-days", g.window_days, "Trailing active-address window in days")
      ->check(CLI::PositiveNumber);
  app.add_option("--magnitude-rule", g.magnitude_rule, "Per-day strength: abs-dv or abs-excess")
      ->check(CLI::IsMember({"abs-dv", "abs-excess"}));
  app.add_flag("--fill-gaps", g.fill_gaps, "Insert missing-value rows for interior date gaps");
  app.add_flag("--log-levels", g.log_levels, "Correlate log levels instead of raw levels");
  app.add_option("--seed", g.seed, "Seed for synthetic data");

  // run
  auto* run = app.add_subcommand("run", "Classify, aggregate, correlate and plot every configured asset");
  std::string run_config, run_out;
  std::vector<std::string> run_pairs, run_formats;
  run->add_option("-c,--config", run_config, "Asset config file")->required();
  run->add_option("-o,--out", run_out, "Output directory")->required();
  run->add_option("--pairs", run_pairs, "Proxy pairs value:user (price|txval : balcnt|act6m)")->delimiter(',');
  run->add_option("--format", run_formats, "Table formats: csv, json, md")->delimiter(',');

  // validate
  auto* validate = app.add_subcommand("validate", "Report missing, zero and negative cells per asset");
  std::string validate_config;
  validate->add_option("-c,--config", validate_config, "Asset config file")->required();

  // derive
  auto* derive = app.add_subcommand("derive", "Derive AdrBalCnt, AdrActCnt and 6MAdrActCnt from an event log");
  std::string derive_events, derive_out, derive_asset = "ASSET";
  derive->add_option("-e,--events", derive_events, "Event log CSV (day,sender,receiver,amount)")->required();
  derive->add_option("-o,--out", derive_out, "Output series CSV (default stdout)");
  derive->add_option("--asset", derive_asset, "Asset symbol");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic series (and optionally its event log)");
  nfx::SynthSpec spec;
  std::string synth_law = "metcalfe", synth_start = "2020-01-01", synth_out, synth_ledger;
  synth->add_option("--law", synth_law, "linear, nlogn, metcalfe, exponential or noise");
  synth->add_option("--days", spec.days, "Number of days");
  synth->add_option("--u0", spec.u0, "Initial userbase");
  synth->add_option("--growth", spec.growth, "Per-day userbase multiplier");
  synth->add_option("--noise", spec.noise_sigma, "Lognormal sigma on value");
  synth->add_option("--scale", spec.scale, "Law constant c");
  synth->add_option("--asset", spec.asset_id, "Asset symbol");
  synth->add_option("--start", synth_start, "First date (YYYY-MM-DD)");
  synth->add_option("-o,--out", synth_out, "Output series CSV (default stdout)");
  synth->add_option("--ledger", synth_ledger, "Also write the event log here");

  // plot
  auto* plot = app.add_subcommand("plot", "Render one stem plot as SVG");
  std::string plot_config, plot_asset, plot_pair = "price:balcnt", plot_out, plot_scale = "symlog";
  nfx::StemPlotSpec plot_spec;
  plot->add_option("-c,--config", plot_config, "Asset config file")->required();
  plot->add_option("--asset", plot_asset, "Asset symbol")->required();
  plot->add_option("--pair", plot_pair, "Proxy pair value:user");
  plot->add_option("-o,--out", plot_out, "Output SVG (default stdout)");
  plot->add_option("--width", plot_spec.width_px, "Width in px");
  plot->add_option("--height", plot_spec.height_px, "Height in px");
  plot->add_option("--y-scale", plot_scale, "linear or symlog")->check(CLI::IsMember({"linear", "symlog"}));
  plot->add_option("--title", plot_spec.title, "Plot title");

  // table
  auto* table = app.add_subcommand("table", "Print the aggregate and correlation tables");
  std::string table_config, table_format = "md", table_out;
  std::vector<std::string> table_pairs;
  table->add_option("-c,--config", table_config, "Asset config file")->required();
  table->add_option("--pairs", table_pairs, "Proxy pairs value:user")->delimiter(',');
  table->add_option("--format", table_format, "csv, json or md");
  table->add_option("-o,--out", table_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    const nfx::WindowSpec window{g.window_days};
    const auto rule = nfx::parse_magnitude_rule(g.magnitude_rule);

    if (*run) {
      nfx::RunManifest manifest;
      manifest.config_path = run_config;
      manifest.output_dir = run_out;
      manifest.pairs = parse_pairs(run_pairs);
      manifest.formats = parse_formats(run_formats);
      manifest.rule = rule;
      manifest.window = window;
      manifest.fill_gaps = g.fill_gaps;
      manifest.log_levels = g.log_levels;
      const auto result = nfx::run_pipeline(manifest);
      std::cerr << fmt::format("wrote {} files to {}\n", result.written.size(), run_out);
    } else if (*validate) {
      bool fatal = false;
      for (const auto& cfg : nfx::load_config(validate_config)) {
        const auto series = nfx::load_asset(cfg, window, g.fill_gaps);
        const auto issues = nfx::validate_series(series);
        std::cout << fmt::format("{}: {} days, {}..{}, {} issue(s)\n", cfg.asset_id, series.size(),
                                 series.dates.front().iso(), series.dates.back().iso(), issues.size());
        for (const auto& issue : issues) {
          std::cout << "  " << issue.message() << '\n';
          fatal = fatal || issue.fatal;
        }
      }
      return fatal ? kExitInput : 0;
    } else if (*derive) {
      const auto events = nfx::read_events(derive_events);
      const auto series = nfx::derive_proxy_series(derive_asset, nfx::intern(events), window);
      std::ostringstream out;
      nfx::write_series(out, series);
      write_file(derive_out, out.str());
    } else if (*synth) {
      spec.law = nfx::parse_value_law(synth_law);
      spec.seed = g.seed;
      const auto start = nfx::parse_date(synth_start);
      if (!start) nfx::fail(nfx::ErrorCode::InvalidArgument, fmt::format("bad --start '{}'", synth_start));
      spec.start = *start;
      std::ostringstream out;
      nfx::write_series(out, nfx::generate(spec));
      write_file(synth_out, out.str());
      if (!synth_ledger.empty()) {
        std::ostringstream events;
        nfx::write_events(events, nfx::generate_ledger(spec));
        write_file(synth_ledger, events.str());
      }
    } else if (*plot) {
      const auto configs = nfx::load_config(plot_config);
      const auto series = nfx::load_asset(find_asset(configs, plot_asset), window, g.fill_gaps);
      const auto pair = nfx::parse_pair(plot_pair);
      plot_spec.rule = rule;
      plot_spec.y_scale = plot_scale == "linear" ? nfx::YScale::Linear : nfx::YScale::SymLog;
      if (plot_spec.title.empty()) plot_spec.title = fmt::format("{} {}", plot_asset, nfx::to_string(pair));
      write_file(plot_out, nfx::render_stemplot(nfx::classify_series(series, pair), plot_spec));
    } else if (*table) {
      const auto pairs = parse_pairs(table_pairs);
      std::vector<nfx::AssetSeries> all;
      std::vector<nfx::NfxAggregate> aggregates;
      for (const auto& cfg : nfx::load_config(table_config)) {
        all.push_back(nfx::load_asset(cfg, window, g.fill_gaps));
        for (const auto& pair : pairs) {
          aggregates.push_back(nfx::aggregate(nfx::classify_series(all.back(), pair), rule, cfg.asset_id, pair));
        }
      }
      const auto cells = nfx::correlation_table(all, nfx::CorrelationOptions{g.log_levels, pairs});
      write_file(table_out, nfx::emit_tables(aggregates, cells, nfx::parse_table_format(table_format)));
    }
  } catch (const nfx::Error& e) {
    std::cerr << "nfx: " << e.what() << '\n';
    return nfx::is_input_error(e.code()) ? kExitInput : kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "nfx: " << e.what() << '\n';
    return kExitCompute;
  }
  return 0;
}
