#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "nfx/classify.hpp"

namespace nfx {

/// Per-day magnitude summed into the strength columns.
enum class MagnitudeRule {
  AbsDeltaV,  ///< |dv|
  AbsExcess,  ///< |dv - du|
};

std::string_view to_string(MagnitudeRule rule) noexcept;
/// `abs-dv` or `abs-excess`; throws InvalidArgument.
MagnitudeRule parse_magnitude_rule(std::string_view text);

double magnitude(const DailyNfx& day, MagnitudeRule rule) noexcept;

/// Counts and derived rates for one sign (positive or reverse).
struct SignStats {
  std::int64_t days = 0;
  double strength_sum = 0.0;
  double prevalence = 0.0;
  /// 100 * strength_sum / days; absent when days == 0.
  std::optional<double> relative_strength;
};

/// Derived fields from the raw triple. total_days must be > 0.
SignStats make_sign_stats(std::int64_t total_days, std::int64_t days, double strength_sum);

struct NfxAggregate {
  std::string asset_id;
  ProxyPair pair;
  MagnitudeRule rule = MagnitudeRule::AbsDeltaV;
  /// Consecutive day pairs, Undefined included (series length - 1).
  std::int64_t delta_days = 0;
  std::int64_t undefined_days = 0;
  /// Classified days: delta_days - undefined_days.
  std::int64_t total_days = 0;
  SignStats positive;
  SignStats reverse;
};

/// Throws NoClassifiedDays when every entry is Undefined (or the list is empty).
NfxAggregate aggregate(std::span<const DailyNfx> classified, MagnitudeRule rule = MagnitudeRule::AbsDeltaV,
                       std::string asset_id = {}, ProxyPair pair = {});

struct StrengthRatio {
  std::optional<double> positive;
  std::optional<double> reverse;
};

/// Price-based strength sums over transaction-value-based ones for the same
/// asset and user proxy. Throws MismatchedPair otherwise.
StrengthRatio strength_ratio(const NfxAggregate& by_price, const NfxAggregate& by_txval);

}  // namespace nfx
