#include "nfx/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "nfx/csv.hpp"
#include "nfx/error.hpp"

namespace nfx {

namespace {

struct RawRow {
  Date date;
  RealCell price;
  RealCell tx_value;
  CountCell bal_cnt;
  CountCell act_cnt;
  CountCell trailing_cnt;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

RealCell parse_real(std::string_view text, std::size_t line, std::string_view column) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    fail(ErrorCode::MalformedRow, fmt::format("line {}: column {}: cannot parse '{}' as a number", line, column, text));
  }
  return value;
}

CountCell parse_count(std::string_view text, std::size_t line, std::string_view column) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc{} && ptr == text.data() + text.size()) return value;
  // Some exports print counts as 123.0
  const auto real = parse_real(text, line, column);
  if (*real != std::floor(*real) || std::fabs(*real) > 9.0e15) {
    fail(ErrorCode::MalformedRow, fmt::format("line {}: column {}: '{}' is not an integer count", line, column, text));
  }
  return static_cast<std::int64_t>(*real);
}

}  // namespace

AssetSeries parse_series(const std::filesystem::path& path, const AssetConfig& config, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::FileNotFound, fmt::format("asset {}: cannot open series file '{}'", config.asset_id, path.string()));
  }
  try {
    return parse_series(in, config, options);
  } catch (const Error& e) {
    fail(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

AssetSeries parse_series(std::istream& in, const AssetConfig& config, const ParseOptions& options) {
  if (config.end_date && *config.end_date < config.start_date) {
    fail(ErrorCode::InvalidConfig, fmt::format("asset {}: end date before start date", config.asset_id));
  }

  std::vector<std::string> fields;
  if (!csv::read_record(in, fields)) fail(ErrorCode::MissingColumn, "empty file: no header row");

  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < fields.size(); ++i) index.emplace(std::string(trim(fields[i])), i);
  const auto column = [&](const char* name) -> std::optional<std::size_t> {
    if (auto it = index.find(name); it != index.end()) return it->second;
    return std::nullopt;
  };

  const auto time_col = column(kTimeColumn);
  const auto price_col = column(kPriceColumn);
  const auto txval_col = column(kTxValueColumn);
  const auto bal_col = column(kBalanceCountColumn);
  const auto act_col = column(kActiveCountColumn);
  const auto trailing_col = column(kTrailingActiveColumn);
  if (!time_col) fail(ErrorCode::MissingColumn, "header has no 'time' column");
  if (!price_col && !txval_col && !bal_col && !act_col && !trailing_col) {
    fail(ErrorCode::MissingColumn, "header names no known metric column");
  }
  const std::size_t width = fields.size();

  std::vector<RawRow> rows;
  std::size_t line = 1;
  while (csv::read_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
    if (fields.size() != width) {
      fail(ErrorCode::MalformedRow, fmt::format("line {}: expected {} fields, found {}", line, width, fields.size()));
    }
    RawRow row;
    const auto date = parse_date(trim(fields[*time_col]));
    if (!date) fail(ErrorCode::MalformedRow, fmt::format("line {}: bad date '{}'", line, fields[*time_col]));
    row.date = *date;
    if (price_col) row.price = parse_real(fields[*price_col], line, kPriceColumn);
    if (txval_col) row.tx_value = parse_real(fields[*txval_col], line, kTxValueColumn);
    if (bal_col) row.bal_cnt = parse_count(fields[*bal_col], line, kBalanceCountColumn);
    if (act_col) row.act_cnt = parse_count(fields[*act_col], line, kActiveCountColumn);
    if (trailing_col) row.trailing_cnt = parse_count(fields[*trailing_col], line, kTrailingActiveColumn);
    rows.push_back(row);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      fail(ErrorCode::DuplicateDate, fmt::format("asset {}: date {} appears more than once", config.asset_id,
                                                 rows[i].date.iso()));
    }
  }

  std::erase_if(rows, [&](const RawRow& r) {
    return r.date < config.start_date || (config.end_date && *config.end_date < r.date);
  });
  if (rows.empty()) {
    fail(ErrorCode::EmptyWindow, fmt::format("asset {}: no rows between {} and {}", config.asset_id,
                                             config.start_date.iso(),
                                             config.end_date ? config.end_date->iso() : std::string("end of file")));
  }

  AssetSeries out;
  out.asset_id = config.asset_id;
  if (trailing_col) out.six_m_adr_act_cnt.emplace();
  const auto push = [&](const RawRow& r) {
    out.dates.push_back(r.date);
    out.price_usd.push_back(r.price);
    out.tx_tfr_val_adj_usd.push_back(r.tx_value);
    out.adr_bal_cnt.push_back(r.bal_cnt);
    out.adr_act_cnt.push_back(r.act_cnt);
    if (out.six_m_adr_act_cnt) out.six_m_adr_act_cnt->push_back(r.trailing_cnt);
  };

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].date - rows[i - 1].date != 1) {
      if (!options.fill_gaps) {
        fail(ErrorCode::NonContiguousDates,
             fmt::format("asset {}: gap between {} and {}", config.asset_id, rows[i - 1].date.iso(),
                         rows[i].date.iso()));
      }
      for (Date d = rows[i - 1].date + 1; d < rows[i].date; ++d) push(RawRow{d, {}, {}, {}, {}, {}});
    }
    push(rows[i]);
  }
  return out;
}

void write_series(std::ostream& out, const AssetSeries& series) {
  const auto real = [](const RealCell& c) { return c ? csv::format_double(*c) : std::string(); };
  const auto count = [](const CountCell& c) { return c ? std::to_string(*c) : std::string(); };

  out << kTimeColumn << ',' << kPriceColumn << ',' << kTxValueColumn << ',' << kBalanceCountColumn << ','
      << kActiveCountColumn;
  if (series.six_m_adr_act_cnt) out << ',' << kTrailingActiveColumn;
  out << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.dates[i].iso() << ',' << real(series.price_usd[i]) << ',' << real(series.tx_tfr_val_adj_usd[i])
        << ',' << count(series.adr_bal_cnt[i]) << ',' << count(series.adr_act_cnt[i]);
    if (series.six_m_adr_act_cnt) out << ',' << count((*series.six_m_adr_act_cnt)[i]);
    out << '\n';
  }
}

std::vector<AssetConfig> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileNotFound, fmt::format("cannot open config '{}'", path.string()));
  return parse_config(in, path.parent_path());
}

std::vector<AssetConfig> parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  struct Block {
    std::size_t line = 0;
    std::map<std::string, std::string, std::less<>> keys;
  };
  std::vector<Block> blocks;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail(ErrorCode::InvalidConfig, fmt::format("config line {}: unterminated block", line));
      blocks.push_back(Block{line, {}});
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::InvalidConfig, fmt::format("config line {}: expected key = value", line));
    }
    if (blocks.empty()) fail(ErrorCode::InvalidConfig, fmt::format("config line {}: key outside a block", line));
    auto key = std::string(trim(text.substr(0, eq)));
    auto value = std::string(trim(text.substr(eq + 1)));
    if (!blocks.back().keys.emplace(key, value).second) {
      fail(ErrorCode::InvalidConfig, fmt::format("config line {}: duplicate key '{}'", line, key));
    }
  }

  static const std::set<std::string, std::less<>> known{"symbol", "path", "start", "end", "events"};
  std::vector<AssetConfig> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& block : blocks) {
    const auto get = [&](std::string_view key) -> const std::string* {
      auto it = block.keys.find(key);
      return it == block.keys.end() ? nullptr : &it->second;
    };
    for (const auto& [key, value] : block.keys) {
      if (!known.contains(key)) {
        fail(ErrorCode::InvalidConfig, fmt::format("config block at line {}: unknown key '{}'", block.line, key));
      }
    }
    for (const char* required : {"symbol", "path", "start"}) {
      if (!get(required) || get(required)->empty()) {
        fail(ErrorCode::InvalidConfig,
             fmt::format("config block at line {}: missing '{}'", block.line, required));
      }
    }
    AssetConfig cfg;
    cfg.asset_id = *get("symbol");
    if (!seen.insert(cfg.asset_id).second) {
      fail(ErrorCode::InvalidConfig, fmt::format("config: asset '{}' defined twice", cfg.asset_id));
    }
    const auto date = [&](std::string_view key) {
      auto d = parse_date(*get(key));
      if (!d) fail(ErrorCode::InvalidConfig, fmt::format("asset {}: bad {} date '{}'", cfg.asset_id, key, *get(key)));
      return *d;
    };
    cfg.start_date = date("start");
    if (get("end")) cfg.end_date = date("end");
    if (cfg.end_date && *cfg.end_date < cfg.start_date) {
      fail(ErrorCode::InvalidConfig, fmt::format("asset {}: end date before start date", cfg.asset_id));
    }
    cfg.source_path = base_dir / *get("path");
    if (get("events")) cfg.events_path = base_dir / *get("events");
    out.push_back(std::move(cfg));
  }
  return out;
}

std::string ValidationIssue::message() const {
  std::string_view what;
  switch (kind) {
    case IssueKind::Missing: what = "missing value"; break;
    case IssueKind::Zero: what = "zero value"; break;
    case IssueKind::Negative: what = "negative value"; break;
    case IssueKind::TrailingBelowDaily: what = "trailing count below daily count"; break;
  }
  return fmt::format("{}: {} ({} day{}, first {}){}", what, column, count, count == 1 ? "" : "s", first.iso(),
                     fatal ? " [fatal]" : "");
}

std::vector<ValidationIssue> validate_series(const AssetSeries& series) {
  std::vector<ValidationIssue> issues;

  const auto scan = [&](std::string_view name, const auto& cells) {
    ValidationIssue missing{IssueKind::Missing, std::string(name), 0, Date{}, false};
    ValidationIssue zero{IssueKind::Zero, std::string(name), 0, Date{}, false};
    ValidationIssue negative{IssueKind::Negative, std::string(name), 0, Date{}, false};
    negative.fatal = true;
    const auto hit = [&](ValidationIssue& issue, std::size_t i) {
      if (issue.count++ == 0) issue.first = series.dates[i];
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!cells[i]) {
        hit(missing, i);
      } else if (*cells[i] == 0) {
        hit(zero, i);
      } else if (*cells[i] < 0) {
        hit(negative, i);
      }
    }
    for (auto* issue : {&missing, &zero, &negative}) {
      if (issue->count > 0) issues.push_back(*issue);
    }
  };

  scan("price_usd", series.price_usd);
  scan("tx_tfr_val_adj_usd", series.tx_tfr_val_adj_usd);
  scan("adr_bal_cnt", series.adr_bal_cnt);
  scan("adr_act_cnt", series.adr_act_cnt);
  if (series.six_m_adr_act_cnt) {
    const auto& trailing = *series.six_m_adr_act_cnt;
    scan("six_m_adr_act_cnt", trailing);
    ValidationIssue below{IssueKind::TrailingBelowDaily, "six_m_adr_act_cnt", 0, Date{}, false};
    for (std::size_t i = 0; i < trailing.size(); ++i) {
      if (trailing[i] && series.adr_act_cnt[i] && *trailing[i] < *series.adr_act_cnt[i]) {
        if (below.count++ == 0) below.first = series.dates[i];
      }
    }
    if (below.count > 0) issues.push_back(below);
  }
  return issues;
}

}  // namespace nfx
