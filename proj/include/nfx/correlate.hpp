#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfx/classify.hpp"
#include "nfx/error.hpp"

namespace nfx {

/// Pearson product-moment coefficient of two equal-length samples.
/// Throws InsufficientData (< 2 points or length mismatch) or DegenerateSeries
/// (zero variance in either). The result is symmetric in its arguments.
double pearson(std::span<const double> x, std::span<const double> y);

struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;
};

/// Pairwise deletion: keeps days where both cells are present (and, with
/// `log_levels`, both positive, then takes logs).
PairedSample paired_sample(std::span<const RealCell> x, std::span<const RealCell> y, bool log_levels = false);

struct CorrelationCell {
  std::string asset_id;
  ValueProxy value_proxy = ValueProxy::TokenPrice;
  UserProxy user_proxy = UserProxy::NonZeroBalanceAddresses;
  std::optional<double> r;
  std::int64_t n = 0;
  /// Set when r is absent.
  std::optional<ErrorCode> reason;
};

struct CorrelationOptions {
  bool log_levels = false;
  std::vector<ProxyPair> pairs = all_pairs();
};

/// One cell per asset x pair, in input order. Failures degrade to an absent
/// r with a reason instead of throwing.
std::vector<CorrelationCell> correlation_table(std::span<const AssetSeries> series,
                                               const CorrelationOptions& options = {});

}  // namespace nfx
