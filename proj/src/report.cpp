#include "nfx/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "nfx/csv.hpp"
#include "nfx/error.hpp"

namespace nfx {

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Daily log moves below this are drawn on the linear part of the symlog axis.
constexpr double kSymLogThreshold = 0.01;

double scaled_height(double m, double max_m, YScale scale) {
  if (max_m <= 0.0) return 0.0;
  if (scale == YScale::Linear) return m / max_m;
  return std::log1p(m / kSymLogThreshold) / std::log1p(max_m / kSymLogThreshold);
}

}  // namespace

std::string render_stemplot(std::span<const DailyNfx> classified, const StemPlotSpec& spec) {
  if (classified.empty()) fail(ErrorCode::EmptyInput, "stem plot: no days to draw");
  if (spec.width_px < 100 || spec.height_px < 100) {
    fail(ErrorCode::InvalidArgument, "stem plot: width and height must be at least 100 px");
  }

  const double left = 70.0, right = 20.0, top = 40.0, bottom = 40.0;
  const double plot_w = spec.width_px - left - right;
  const double plot_h = spec.height_px - top - bottom;
  const double baseline = top + plot_h / 2.0;
  const double half_h = plot_h / 2.0;

  const Date first = classified.front().date;
  const Date last = classified.back().date;
  const double span_days = std::max(1, last - first);
  const auto x_of = [&](Date d) { return left + plot_w * static_cast<double>(d - first) / span_days; };

  double max_m = 0.0;
  for (const auto& day : classified) {
    if (day.cls == NfxClass::Positive || day.cls == NfxClass::Reverse) max_m = std::max(max_m, magnitude(day, spec.rule));
  }

  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
                 "viewBox=\"0 0 {} {}\">\n",
                 spec.width_px, spec.height_px, spec.width_px, spec.height_px);
  fmt::format_to(it, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", spec.width_px,
                 spec.height_px, xml_escape(spec.background));
  if (!spec.title.empty()) {
    fmt::format_to(it, "<text x=\"{:.2f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
                       "text-anchor=\"middle\">{}</text>\n",
                   spec.width_px / 2.0, xml_escape(spec.title));
  }

  // axes
  fmt::format_to(it, "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n");
  fmt::format_to(it, "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n", left, top, left, top + plot_h);
  fmt::format_to(it, "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n", left, baseline, left + plot_w,
                 baseline);
  fmt::format_to(it, "</g>\n");
  fmt::format_to(it, "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\">\n");
  fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"start\">{}</text>\n", left,
                 top + plot_h + 18.0, first.iso());
  fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", left + plot_w,
                 top + plot_h + 18.0, last.iso());
  fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">+{:.4f}</text>\n", left - 6.0, top + 4.0,
                 max_m);
  fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">0</text>\n", left - 6.0, baseline + 4.0);
  fmt::format_to(it, "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">-{:.4f}</text>\n", left - 6.0,
                 top + plot_h + 4.0, max_m);
  fmt::format_to(it, "</g>\n");

  fmt::format_to(it, "<g class=\"stems\" stroke-width=\"1\">\n");
  for (const auto& day : classified) {
    if (day.cls != NfxClass::Positive && day.cls != NfxClass::Reverse) continue;
    const bool up = day.cls == NfxClass::Positive;
    const double h = half_h * scaled_height(magnitude(day, spec.rule), max_m, spec.y_scale);
    const double x = x_of(day.date);
    fmt::format_to(it, "<line class=\"stem {}\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\"/>\n",
                   up ? "positive" : "reverse", x, baseline, x, up ? baseline - h : baseline + h,
                   xml_escape(up ? spec.positive_color : spec.reverse_color));
  }
  fmt::format_to(it, "</g>\n</svg>\n");
  return out;
}

std::string_view extension(TableFormat format) noexcept {
  switch (format) {
    case TableFormat::Csv: return "csv";
    case TableFormat::Json: return "json";
    case TableFormat::Markdown: return "md";
  }
  return "csv";
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "csv") return TableFormat::Csv;
  if (text == "json") return TableFormat::Json;
  if (text == "md" || text == "markdown") return TableFormat::Markdown;
  fail(ErrorCode::InvalidArgument, fmt::format("bad table format '{}': expected csv, json or md", text));
}

namespace {

using nlohmann::ordered_json;

struct SignRow {
  const NfxAggregate* agg;
  std::string_view sign;
  const SignStats* stats;
};

std::vector<SignRow> sign_rows(std::span<const NfxAggregate> aggregates) {
  std::vector<SignRow> rows;
  for (const auto& a : aggregates) {
    rows.push_back({&a, "positive", &a.positive});
    rows.push_back({&a, "reverse", &a.reverse});
  }
  return rows;
}

std::string display(double v) { return fmt::format("{:.3f}", v); }
std::string display(const std::optional<double>& v) { return v ? display(*v) : std::string("-"); }
std::string full(const std::optional<double>& v) { return v ? csv::format_double(*v) : std::string(); }

ordered_json json_opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json aggregates_json(std::span<const NfxAggregate> aggregates) {
  auto arr = ordered_json::array();
  for (const auto& row : sign_rows(aggregates)) {
    ordered_json j;
    j["asset"] = row.agg->asset_id;
    j["pair"] = to_string(row.agg->pair);
    j["rule"] = std::string(to_string(row.agg->rule));
    j["sign"] = std::string(row.sign);
    j["delta_days"] = row.agg->delta_days;
    j["undefined_days"] = row.agg->undefined_days;
    j["total_days"] = row.agg->total_days;
    j["nfx_days"] = row.stats->days;
    j["strength_sum"] = row.stats->strength_sum;
    j["prevalence"] = row.stats->prevalence;
    j["relative_strength"] = json_opt(row.stats->relative_strength);
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json correlations_json(std::span<const CorrelationCell> cells) {
  auto arr = ordered_json::array();
  for (const auto& c : cells) {
    ordered_json j;
    j["asset"] = c.asset_id;
    j["value_proxy"] = std::string(column_name(c.value_proxy));
    j["user_proxy"] = std::string(column_name(c.user_proxy));
    j["r"] = json_opt(c.r);
    j["n"] = c.n;
    j["reason"] = c.reason ? ordered_json(std::string(to_string(*c.reason))) : ordered_json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string aggregates_csv(std::span<const NfxAggregate> aggregates) {
  std::string out =
      "asset,pair,rule,sign,delta_days,undefined_days,total_days,nfx_days,strength_sum,prevalence,"
      "relative_strength\n";
  for (const auto& row : sign_rows(aggregates)) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", csv::escape(row.agg->asset_id), to_string(row.agg->pair),
                       to_string(row.agg->rule), row.sign, row.agg->delta_days, row.agg->undefined_days,
                       row.agg->total_days, row.stats->days, csv::format_double(row.stats->strength_sum),
                       csv::format_double(row.stats->prevalence), full(row.stats->relative_strength));
  }
  return out;
}

std::string aggregates_markdown(std::span<const NfxAggregate> aggregates) {
  std::string out =
      "| Asset | Pair | Sign | Total days | NFX days | Strength sum | Total/NFX days ratio | Relative strength |\n"
      "|---|---|---|---:|---:|---:|---:|---:|\n";
  for (const auto& row : sign_rows(aggregates)) {
    out += fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} |\n", row.agg->asset_id, to_string(row.agg->pair),
                       row.sign, row.agg->total_days, row.stats->days, display(row.stats->strength_sum),
                       display(row.stats->prevalence), display(row.stats->relative_strength));
  }
  return out;
}

std::string correlations_csv(std::span<const CorrelationCell> cells) {
  std::string out = "asset,value_proxy,user_proxy,r,n,reason\n";
  for (const auto& c : cells) {
    out += fmt::format("{},{},{},{},{},{}\n", csv::escape(c.asset_id), column_name(c.value_proxy),
                       column_name(c.user_proxy), full(c.r), c.n, c.reason ? to_string(*c.reason) : "");
  }
  return out;
}

// Matrix layout: one row per asset x value proxy, one column per user proxy.
std::string correlations_markdown(std::span<const CorrelationCell> cells) {
  std::string out = "| Asset | Value proxy | AdrBalCnt | 6MAdrActCnt |\n|---|---|---:|---:|\n";
  std::vector<std::pair<std::string, ValueProxy>> rows;
  std::map<std::tuple<std::string, ValueProxy, UserProxy>, const CorrelationCell*> lookup;
  for (const auto& c : cells) {
    const auto key = std::make_pair(c.asset_id, c.value_proxy);
    if (std::find(rows.begin(), rows.end(), key) == rows.end()) rows.push_back(key);
    lookup[{c.asset_id, c.value_proxy, c.user_proxy}] = &c;
  }
  const auto cell_text = [&](const std::string& asset, ValueProxy v, UserProxy u) -> std::string {
    auto it = lookup.find({asset, v, u});
    if (it == lookup.end()) return "";
    const auto& c = *it->second;
    if (c.r) return fmt::format("{:.6f}", *c.r);
    return fmt::format("- ({})", c.reason ? to_string(*c.reason) : "n/a");
  };
  for (const auto& [asset, value] : rows) {
    out += fmt::format("| {} | {} | {} | {} |\n", asset, column_name(value),
                       cell_text(asset, value, UserProxy::NonZeroBalanceAddresses),
                       cell_text(asset, value, UserProxy::Trailing6MActiveAddresses));
  }
  return out;
}

}  // namespace

std::string emit_aggregate_table(std::span<const NfxAggregate> aggregates, TableFormat format) {
  switch (format) {
    case TableFormat::Csv: return aggregates_csv(aggregates);
    case TableFormat::Json: return aggregates_json(aggregates).dump(2) + "\n";
    case TableFormat::Markdown: return aggregates_markdown(aggregates);
  }
  return {};
}

std::string emit_correlation_table(std::span<const CorrelationCell> cells, TableFormat format) {
  switch (format) {
    case TableFormat::Csv: return correlations_csv(cells);
    case TableFormat::Json: return correlations_json(cells).dump(2) + "\n";
    case TableFormat::Markdown: return correlations_markdown(cells);
  }
  return {};
}

std::string emit_tables(std::span<const NfxAggregate> aggregates, std::span<const CorrelationCell> cells,
                        TableFormat format) {
  switch (format) {
    case TableFormat::Csv:
      return aggregates_csv(aggregates) + "\n" + correlations_csv(cells);
    case TableFormat::Json: {
      ordered_json doc;
      doc["aggregates"] = aggregates_json(aggregates);
      doc["correlations"] = correlations_json(cells);
      return doc.dump(2) + "\n";
    }
    case TableFormat::Markdown:
      return "## Network effect measurements\n\n" + aggregates_markdown(aggregates) +
             "\n## Pearson correlation between value and user proxies\n\n" + correlations_markdown(cells);
  }
  return {};
}

namespace {

template <typename T>
T parse_number(const std::string& text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::MalformedRow, fmt::format("cannot parse {} '{}'", what, text));
  }
  return value;
}

}  // namespace

std::vector<AggregateRow> parse_aggregate_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> f;
  if (!csv::read_record(in, f) || f.size() != 11 || f[0] != "asset") {
    fail(ErrorCode::MissingColumn, "aggregate CSV: unexpected header");
  }
  std::vector<AggregateRow> rows;
  while (csv::read_record(in, f)) {
    if (f.size() == 1 && f[0].empty()) break;  // end of section
    if (f.size() != 11) fail(ErrorCode::MalformedRow, "aggregate CSV: expected 11 fields");
    AggregateRow r;
    r.asset_id = f[0];
    r.pair = f[1];
    r.rule = f[2];
    r.sign = f[3];
    r.undefined_days = parse_number<std::int64_t>(f[5], "undefined_days");
    r.total_days = parse_number<std::int64_t>(f[6], "total_days");
    r.nfx_days = parse_number<std::int64_t>(f[7], "nfx_days");
    r.strength_sum = parse_number<double>(f[8], "strength_sum");
    r.prevalence = parse_number<double>(f[9], "prevalence");
    if (!f[10].empty()) r.relative_strength = parse_number<double>(f[10], "relative_strength");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string emit_classification_csv(std::span<const DailyNfx> classified) {
  const auto num = [](double v) { return std::isfinite(v) ? csv::format_double(v) : std::string(); };
  std::string out = "date,delta_v,delta_u,class\n";
  for (const auto& d : classified) {
    out += fmt::format("{},{},{},{}\n", d.date.iso(), num(d.delta_v), num(d.delta_u), to_string(d.cls));
  }
  return out;
}

std::vector<DailyNfx> parse_classification_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> f;
  if (!csv::read_record(in, f) || f != std::vector<std::string>{"date", "delta_v", "delta_u", "class"}) {
    fail(ErrorCode::MissingColumn, "classification CSV: header must be date,delta_v,delta_u,class");
  }
  const auto num = [](const std::string& s) {
    return s.empty() ? std::numeric_limits<double>::quiet_NaN() : parse_number<double>(s, "delta");
  };
  std::vector<DailyNfx> out;
  while (csv::read_record(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 4) fail(ErrorCode::MalformedRow, "classification CSV: expected 4 fields");
    const auto date = parse_date(f[0]);
    const auto cls = parse_class(f[3]);
    if (!date || !cls) fail(ErrorCode::MalformedRow, "classification CSV: bad date or class");
    out.push_back({*date, num(f[1]), num(f[2]), *cls});
  }
  return out;
}

}  // namespace nfx
