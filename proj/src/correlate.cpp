#include "nfx/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace nfx {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    fail(ErrorCode::InsufficientData, fmt::format("pearson: length mismatch {} vs {}", x.size(), y.size()));
  }
  if (x.size() < 2) fail(ErrorCode::InsufficientData, fmt::format("pearson: need 2 points, have {}", x.size()));

  // Corrected two-pass: the second term removes the rounding left in the mean.
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double m2_x = 0.0, m2_y = 0.0, co = 0.0, sum_dx = 0.0, sum_dy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m2_x += dx * dx;
    m2_y += dy * dy;
    co += dx * dy;
    sum_dx += dx;
    sum_dy += dy;
  }
  m2_x -= sum_dx * sum_dx / n;
  m2_y -= sum_dy * sum_dy / n;
  co -= sum_dx * sum_dy / n;
  if (!(m2_x > 0.0) || !(m2_y > 0.0)) fail(ErrorCode::DegenerateSeries, "pearson: zero variance");
  const double r = co / (std::sqrt(m2_x) * std::sqrt(m2_y));
  return std::clamp(r, -1.0, 1.0);
}

PairedSample paired_sample(std::span<const RealCell> x, std::span<const RealCell> y, bool log_levels) {
  PairedSample out;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i] || !y[i]) continue;
    if (log_levels) {
      if (!(*x[i] > 0.0) || !(*y[i] > 0.0)) continue;
      out.x.push_back(std::log(*x[i]));
      out.y.push_back(std::log(*y[i]));
    } else {
      out.x.push_back(*x[i]);
      out.y.push_back(*y[i]);
    }
  }
  return out;
}

std::vector<CorrelationCell> correlation_table(std::span<const AssetSeries> series,
                                               const CorrelationOptions& options) {
  std::vector<CorrelationCell> cells;
  for (const auto& s : series) {
    for (const auto& pair : options.pairs) {
      CorrelationCell cell{s.asset_id, pair.value, pair.user, std::nullopt, 0, std::nullopt};
      try {
        const auto value = value_column(s, pair.value);
        const auto users = user_column(s, pair.user);
        const auto sample = paired_sample(value, users, options.log_levels);
        cell.n = static_cast<std::int64_t>(sample.x.size());
        cell.r = pearson(sample.x, sample.y);
      } catch (const Error& e) {
        cell.reason = e.code();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace nfx
