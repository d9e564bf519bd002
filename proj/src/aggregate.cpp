#include "nfx/aggregate.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nfx/error.hpp"

namespace nfx {

std::string_view to_string(MagnitudeRule rule) noexcept {
  return rule == MagnitudeRule::AbsDeltaV ? "abs-dv" : "abs-excess";
}

MagnitudeRule parse_magnitude_rule(std::string_view text) {
  if (text == "abs-dv") return MagnitudeRule::AbsDeltaV;
  if (text == "abs-excess") return MagnitudeRule::AbsExcess;
  fail(ErrorCode::InvalidArgument, fmt::format("bad magnitude rule '{}': expected abs-dv or abs-excess", text));
}

double magnitude(const DailyNfx& day, MagnitudeRule rule) noexcept {
  return rule == MagnitudeRule::AbsDeltaV ? std::fabs(day.delta_v) : std::fabs(day.delta_v - day.delta_u);
}

SignStats make_sign_stats(std::int64_t total_days, std::int64_t days, double strength_sum) {
  if (total_days <= 0) fail(ErrorCode::NoClassifiedDays, "total days must be positive");
  SignStats s;
  s.days = days;
  s.strength_sum = strength_sum;
  s.prevalence = static_cast<double>(days) / static_cast<double>(total_days);
  if (days > 0) s.relative_strength = 100.0 * strength_sum / static_cast<double>(days);
  return s;
}

NfxAggregate aggregate(std::span<const DailyNfx> classified, MagnitudeRule rule, std::string asset_id,
                       ProxyPair pair) {
  NfxAggregate agg;
  agg.asset_id = std::move(asset_id);
  agg.pair = pair;
  agg.rule = rule;
  agg.delta_days = static_cast<std::int64_t>(classified.size());

  std::int64_t pos_days = 0;
  std::int64_t rev_days = 0;
  double pos_sum = 0.0;
  double rev_sum = 0.0;
  for (const auto& day : classified) {
    switch (day.cls) {
      case NfxClass::Undefined:
        ++agg.undefined_days;
        break;
      case NfxClass::Positive:
        ++pos_days;
        pos_sum += magnitude(day, rule);
        break;
      case NfxClass::Reverse:
        ++rev_days;
        rev_sum += magnitude(day, rule);
        break;
      case NfxClass::None:
        break;
    }
  }
  agg.total_days = agg.delta_days - agg.undefined_days;
  if (agg.total_days == 0) {
    fail(ErrorCode::NoClassifiedDays,
         fmt::format("asset {} pair {}: no classified days ({} undefined)", agg.asset_id, to_string(pair),
                     agg.undefined_days));
  }
  agg.positive = make_sign_stats(agg.total_days, pos_days, pos_sum);
  agg.reverse = make_sign_stats(agg.total_days, rev_days, rev_sum);
  return agg;
}

StrengthRatio strength_ratio(const NfxAggregate& by_price, const NfxAggregate& by_txval) {
  if (by_price.asset_id != by_txval.asset_id || by_price.pair.user != by_txval.pair.user ||
      by_price.pair.value != ValueProxy::TokenPrice || by_txval.pair.value != ValueProxy::TransactionValue ||
      by_price.rule != by_txval.rule) {
    fail(ErrorCode::MismatchedPair,
         fmt::format("strength ratio needs price and txval aggregates of one asset and user proxy; got {} {} and {} {}",
                     by_price.asset_id, to_string(by_price.pair), by_txval.asset_id, to_string(by_txval.pair)));
  }
  const auto ratio = [](double num, double den) -> std::optional<double> {
    if (den == 0.0) return std::nullopt;
    return num / den;
  };
  return {ratio(by_price.positive.strength_sum, by_txval.positive.strength_sum),
          ratio(by_price.reverse.strength_sum, by_txval.reverse.strength_sum)};
}

}  // namespace nfx
