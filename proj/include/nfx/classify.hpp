#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nfx/date.hpp"
#include "nfx/ingest.hpp"

namespace nfx {

enum class ValueProxy { TokenPrice, TransactionValue };
enum class UserProxy { NonZeroBalanceAddresses, Trailing6MActiveAddresses };

struct ProxyPair {
  ValueProxy value = ValueProxy::TokenPrice;
  UserProxy user = UserProxy::NonZeroBalanceAddresses;

  auto operator<=>(const ProxyPair&) const = default;
};

/// price:balcnt, price:act6m, txval:balcnt, txval:act6m
std::vector<ProxyPair> all_pairs();

std::string_view short_name(ValueProxy p) noexcept;  // price | txval
std::string_view short_name(UserProxy p) noexcept;   // balcnt | act6m
std::string_view column_name(ValueProxy p) noexcept;  // PriceUSD | TxTfrValAdjUSD
std::string_view column_name(UserProxy p) noexcept;   // AdrBalCnt | 6MAdrActCnt
std::string to_string(ProxyPair pair);
/// Parses `value:user`; throws InvalidArgument.
ProxyPair parse_pair(std::string_view text);

enum class NfxClass { Positive, Reverse, None, Undefined };

std::string_view to_string(NfxClass c) noexcept;
std::optional<NfxClass> parse_class(std::string_view text) noexcept;

struct LogDelta {
  Date date;  // day t of the (t, t+1) pair
  double delta_v = 0.0;
  double delta_u = 0.0;
};

struct DailyNfx {
  Date date;
  double delta_v = 0.0;
  double delta_u = 0.0;
  NfxClass cls = NfxClass::None;
};

/// Value column of the series as doubles (missing stays missing).
std::vector<RealCell> value_column(const AssetSeries& series, ValueProxy proxy);
/// User column as doubles; throws UnknownColumn when 6MAdrActCnt is absent.
std::vector<RealCell> user_column(const AssetSeries& series, UserProxy proxy);

/// ln(x[t+1] / x[t]) for each consecutive day pair. A missing, zero or
/// negative operand yields NaN.
std::vector<LogDelta> log_deltas(const AssetSeries& series, ProxyPair pair);

/// Positive iff dv > du >= 0, Reverse iff dv < du <= 0, Undefined if either
/// delta is non-finite, None otherwise.
NfxClass classify_day(double delta_v, double delta_u) noexcept;

std::vector<DailyNfx> classify_series(const AssetSeries& series, ProxyPair pair);
std::vector<DailyNfx> classify_deltas(std::span<const LogDelta> deltas);

}  // namespace nfx
