#include "nfx/classify.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nfx/error.hpp"

namespace nfx {

std::vector<ProxyPair> all_pairs() {
  return {
      {ValueProxy::TokenPrice, UserProxy::NonZeroBalanceAddresses},
      {ValueProxy::TokenPrice, UserProxy::Trailing6MActiveAddresses},
      {ValueProxy::TransactionValue, UserProxy::NonZeroBalanceAddresses},
      {ValueProxy::TransactionValue, UserProxy::Trailing6MActiveAddresses},
  };
}

std::string_view short_name(ValueProxy p) noexcept { return p == ValueProxy::TokenPrice ? "price" : "txval"; }
std::string_view short_name(UserProxy p) noexcept {
  return p == UserProxy::NonZeroBalanceAddresses ? "balcnt" : "act6m";
}
std::string_view column_name(ValueProxy p) noexcept {
  return p == ValueProxy::TokenPrice ? kPriceColumn : kTxValueColumn;
}
std::string_view column_name(UserProxy p) noexcept {
  return p == UserProxy::NonZeroBalanceAddresses ? kBalanceCountColumn : kTrailingActiveColumn;
}

std::string to_string(ProxyPair pair) { return fmt::format("{}:{}", short_name(pair.value), short_name(pair.user)); }

ProxyPair parse_pair(std::string_view text) {
  const auto colon = text.find(':');
  const auto value = text.substr(0, colon);
  const auto user = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  ProxyPair pair;
  if (value == "price") {
    pair.value = ValueProxy::TokenPrice;
  } else if (value == "txval") {
    pair.value = ValueProxy::TransactionValue;
  } else {
    fail(ErrorCode::InvalidArgument, fmt::format("bad proxy pair '{}': value proxy must be price or txval", text));
  }
  if (user == "balcnt") {
    pair.user = UserProxy::NonZeroBalanceAddresses;
  } else if (user == "act6m") {
    pair.user = UserProxy::Trailing6MActiveAddresses;
  } else {
    fail(ErrorCode::InvalidArgument, fmt::format("bad proxy pair '{}': user proxy must be balcnt or act6m", text));
  }
  return pair;
}

std::string_view to_string(NfxClass c) noexcept {
  switch (c) {
    case NfxClass::Positive: return "positive";
    case NfxClass::Reverse: return "reverse";
    case NfxClass::None: return "none";
    case NfxClass::Undefined: return "undefined";
  }
  return "undefined";
}

std::optional<NfxClass> parse_class(std::string_view text) noexcept {
  for (auto c : {NfxClass::Positive, NfxClass::Reverse, NfxClass::None, NfxClass::Undefined}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

std::vector<RealCell> value_column(const AssetSeries& series, ValueProxy proxy) {
  return proxy == ValueProxy::TokenPrice ? series.price_usd : series.tx_tfr_val_adj_usd;
}

std::vector<RealCell> user_column(const AssetSeries& series, UserProxy proxy) {
  const std::vector<CountCell>* counts = &series.adr_bal_cnt;
  if (proxy == UserProxy::Trailing6MActiveAddresses) {
    if (!series.six_m_adr_act_cnt) {
      fail(ErrorCode::UnknownColumn,
           fmt::format("asset {}: no {} column and no event log to derive it", series.asset_id, kTrailingActiveColumn));
    }
    counts = &*series.six_m_adr_act_cnt;
  }
  std::vector<RealCell> out;
  out.reserve(counts->size());
  for (const auto& c : *counts) out.push_back(c ? RealCell(static_cast<double>(*c)) : std::nullopt);
  return out;
}

namespace {

double log_return(const RealCell& from, const RealCell& to) {
  if (!from || !to || !(*from > 0.0) || !(*to > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(*to / *from);
}

}  // namespace

std::vector<LogDelta> log_deltas(const AssetSeries& series, ProxyPair pair) {
  if (series.size() < 2) {
    fail(ErrorCode::SeriesTooShort,
         fmt::format("asset {}: need at least 2 days for a delta, have {}", series.asset_id, series.size()));
  }
  const auto value = value_column(series, pair.value);
  const auto users = user_column(series, pair.user);

  std::vector<LogDelta> out;
  out.reserve(series.size() - 1);
  for (std::size_t t = 0; t + 1 < series.size(); ++t) {
    out.push_back({series.dates[t], log_return(value[t], value[t + 1]), log_return(users[t], users[t + 1])});
  }
  return out;
}

NfxClass classify_day(double delta_v, double delta_u) noexcept {
  if (!std::isfinite(delta_v) || !std::isfinite(delta_u)) return NfxClass::Undefined;
  if (delta_v > delta_u && delta_u >= 0.0) return NfxClass::Positive;
  if (delta_v < delta_u && delta_u <= 0.0) return NfxClass::Reverse;
  return NfxClass::None;
}

std::vector<DailyNfx> classify_deltas(std::span<const LogDelta> deltas) {
  std::vector<DailyNfx> out;
  out.reserve(deltas.size());
  for (const auto& d : deltas) out.push_back({d.date, d.delta_v, d.delta_u, classify_day(d.delta_v, d.delta_u)});
  return out;
}

std::vector<DailyNfx> classify_series(const AssetSeries& series, ProxyPair pair) {
  return classify_deltas(log_deltas(series, pair));
}

}  // namespace nfx
