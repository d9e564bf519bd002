#include "nfx/ledger.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <fmt/format.h>

#include "nfx/csv.hpp"
#include "nfx/error.hpp"

namespace nfx {

InternedLedger intern(std::span<const LedgerEvent> events, std::optional<DayRange> range) {
  InternedLedger out;
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].day < events[i - 1].day) {
      fail(ErrorCode::UnsortedInput,
           fmt::format("event {} on {} follows an event on {}", i, events[i].day.iso(), events[i - 1].day.iso()));
    }
  }
  if (range) {
    if (range->last < range->first) fail(ErrorCode::InvalidArgument, "ledger range ends before it starts");
    out.range = *range;
  } else if (events.empty()) {
    fail(ErrorCode::EmptyInput, "empty event log and no day range");
  } else {
    out.range = DayRange{events.front().day, events.back().day};
  }

  std::unordered_map<std::string_view, AddressId> ids;
  ids.reserve(events.size() / 2 + 1);
  ids.emplace(kMintSource, kMintId);
  const auto id_of = [&](const std::string& address) {
    auto [it, inserted] = ids.try_emplace(address, static_cast<AddressId>(ids.size()));
    return it->second;
  };

  out.day.reserve(events.size());
  out.sender.reserve(events.size());
  out.receiver.reserve(events.size());
  out.amount.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.day < out.range.first || out.range.last < e.day) {
      fail(ErrorCode::InvalidArgument,
           fmt::format("event {} on {} lies outside {}..{}", i, e.day.iso(), out.range.first.iso(),
                       out.range.last.iso()));
    }
    if (!(e.amount >= 0.0) || !std::isfinite(e.amount)) {
      fail(ErrorCode::InvalidArgument, fmt::format("event {}: amount must be a finite value >= 0", i));
    }
    out.day.push_back(e.day - out.range.first);
    out.sender.push_back(id_of(e.sender));
    out.receiver.push_back(id_of(e.receiver));
    out.amount.push_back(e.amount);
  }
  out.address_count = ids.size();
  return out;
}

std::vector<std::int64_t> derive_balance_counts(const InternedLedger& ledger) {
  const std::size_t days = ledger.range.size();
  std::vector<std::int64_t> counts(days, 0);
  std::vector<double> balance(ledger.address_count, 0.0);
  std::int64_t holders = 0;

  const auto credit = [&](AddressId a, double amount) {
    if (a == kMintId || amount <= 0.0) return;
    if (balance[a] <= 0.0) ++holders;
    balance[a] += amount;
  };
  const auto debit = [&](std::size_t i, AddressId a, double amount) {
    if (a == kMintId || amount <= 0.0) return;
    const double before = balance[a];
    // Relative slack for amounts that went through decimal text.
    const double slack = 1e-12 * std::max(before, amount);
    if (amount > before + slack) {
      fail(ErrorCode::NegativeBalance,
           fmt::format("event {} on {} spends {} but the sender holds {}", i,
                       (ledger.range.first + ledger.day[i]).iso(), amount, before));
    }
    double after = before - amount;
    if (after <= slack) after = 0.0;
    balance[a] = after;
    if (before > 0.0 && after == 0.0) --holders;
  };

  std::size_t i = 0;
  for (std::size_t d = 0; d < days; ++d) {
    for (; i < ledger.size() && ledger.day[i] == static_cast<std::int32_t>(d); ++i) {
      debit(i, ledger.sender[i], ledger.amount[i]);
      credit(ledger.receiver[i], ledger.amount[i]);
    }
    counts[d] = holders;
  }
  return counts;
}

std::vector<std::int64_t> derive_balance_counts(std::span<const LedgerEvent> events, std::optional<DayRange> range) {
  return derive_balance_counts(intern(events, range));
}

ActiveCounts derive_active_counts(const InternedLedger& ledger, WindowSpec window) {
  if (window.length_days < 1) fail(ErrorCode::InvalidArgument, "window length must be at least 1 day");
  const auto days = static_cast<std::int32_t>(ledger.range.size());
  const std::int32_t length = window.length_days;

  ActiveCounts out;
  out.daily.assign(days, 0);
  out.windowed.assign(days, 0);

  // last_seen[a]: last day index the address was active, -1 if never.
  // bucket[d]: addresses whose last active day is d.
  std::vector<std::int32_t> last_seen(ledger.address_count, -1);
  std::vector<std::int64_t> bucket(days, 0);
  std::int64_t in_window = 0;

  std::size_t i = 0;
  for (std::int32_t d = 0; d < days; ++d) {
    const std::int32_t oldest = d - length + 1;
    if (oldest > 0) in_window -= bucket[oldest - 1];

    const auto touch = [&](AddressId a) {
      if (a == kMintId) return;
      const std::int32_t prev = last_seen[a];
      if (prev == d) return;
      if (prev >= 0 && prev >= oldest) {
        --bucket[prev];
      } else {
        ++in_window;
      }
      ++bucket[d];
      last_seen[a] = d;
    };
    for (; i < ledger.size() && ledger.day[i] == d; ++i) {
      touch(ledger.sender[i]);
      touch(ledger.receiver[i]);
    }
    out.daily[d] = bucket[d];
    out.windowed[d] = in_window;
  }
  return out;
}

ActiveCounts derive_active_counts(std::span<const LedgerEvent> events, WindowSpec window,
                                  std::optional<DayRange> range) {
  return derive_active_counts(intern(events, range), window);
}

std::vector<LedgerEvent> read_events(std::istream& in) {
  std::vector<std::string> fields;
  if (!csv::read_record(in, fields)) fail(ErrorCode::MissingColumn, "event log: no header row");
  const std::vector<std::string> expected{"day", "sender", "receiver", "amount"};
  if (fields != expected) fail(ErrorCode::MissingColumn, "event log header must be day,sender,receiver,amount");

  std::vector<LedgerEvent> events;
  std::size_t line = 1;
  while (csv::read_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 4) fail(ErrorCode::MalformedRow, fmt::format("event log line {}: expected 4 fields", line));
    LedgerEvent e;
    const auto day = parse_date(fields[0]);
    if (!day) fail(ErrorCode::MalformedRow, fmt::format("event log line {}: bad day '{}'", line, fields[0]));
    e.day = *day;
    e.sender = std::move(fields[1]);
    e.receiver = std::move(fields[2]);
    if (e.sender.empty() || e.receiver.empty() || (e.receiver == kMintSource && e.sender == kMintSource)) {
      fail(ErrorCode::MalformedRow, fmt::format("event log line {}: bad endpoints", line));
    }
    const auto& text = fields[3];
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), e.amount);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(e.amount) || e.amount < 0) {
      fail(ErrorCode::MalformedRow, fmt::format("event log line {}: bad amount '{}'", line, text));
    }
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<LedgerEvent> read_events(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileNotFound, fmt::format("cannot open event log '{}'", path.string()));
  try {
    return read_events(in);
  } catch (const Error& e) {
    fail(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_events(std::ostream& out, std::span<const LedgerEvent> events) {
  out << "day,sender,receiver,amount\n";
  for (const auto& e : events) {
    out << e.day.iso() << ',' << csv::escape(e.sender) << ',' << csv::escape(e.receiver) << ','
        << csv::format_double(e.amount) << '\n';
  }
}

AssetSeries derive_proxy_series(const std::string& asset_id, const InternedLedger& ledger, WindowSpec window) {
  const auto balances = derive_balance_counts(ledger);
  const auto active = derive_active_counts(ledger, window);
  const std::size_t days = ledger.range.size();

  AssetSeries out;
  out.asset_id = asset_id;
  out.dates.reserve(days);
  for (std::size_t d = 0; d < days; ++d) out.dates.push_back(ledger.range.first + static_cast<std::int32_t>(d));
  out.price_usd.assign(days, std::nullopt);
  out.tx_tfr_val_adj_usd.assign(days, std::nullopt);
  out.adr_bal_cnt.assign(balances.begin(), balances.end());
  out.adr_act_cnt.assign(active.daily.begin(), active.daily.end());
  out.six_m_adr_act_cnt.emplace(active.windowed.begin(), active.windowed.end());
  return out;
}

void attach_trailing_active(AssetSeries& series, const InternedLedger& ledger, WindowSpec window) {
  if (series.six_m_adr_act_cnt) return;
  const auto active = derive_active_counts(ledger, window);
  std::vector<CountCell> column(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::int32_t offset = series.dates[i] - ledger.range.first;
    if (offset >= 0 && offset < static_cast<std::int32_t>(active.windowed.size())) {
      column[i] = active.windowed[offset];
    }
  }
  series.six_m_adr_act_cnt = std::move(column);
}

}  // namespace nfx
