#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nfx/date.hpp"
#include "nfx/ingest.hpp"
#include "nfx/ledger.hpp"

namespace nfx {

enum class ValueLaw {
  Linear,       ///< V = c*u
  NLogN,        ///< V = c*u*ln(u)
  Metcalfe,     ///< V = c*u^2
  Exponential,  ///< V = c*2^u
  NoiseOnly,    ///< V = c
};

std::string_view to_string(ValueLaw law) noexcept;
/// linear | nlogn | metcalfe | exponential | noise; throws InvalidArgument.
ValueLaw parse_value_law(std::string_view text);

struct SynthSpec {
  ValueLaw law = ValueLaw::Metcalfe;
  std::int32_t days = 365;
  double u0 = 1e5;
  /// Per-day userbase multiplier.
  double growth = 1.01;
  /// Lognormal sigma of the multiplicative noise on V (and, independently, on
  /// transaction value).
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  double scale = 1.0;
  std::string asset_id = "SYN";
  Date start = Date(2020, 1, 1);
};

/// Throws InvalidSpec.
void check_spec(const SynthSpec& spec);

/// Userbase path: round(u0 * growth^t), at least 1.
std::vector<std::int64_t> userbase_path(const SynthSpec& spec);

/// The law is applied to the rounded userbase, so with zero noise
/// ln(V[t+1]/V[t]) equals the law's elasticity times ln(u[t+1]/u[t]).
AssetSeries generate(const SynthSpec& spec);

/// Mint and transfer events whose end-of-day non-zero-balance count equals
/// userbase_path(spec) on every day. Every day carries at least one event.
std::vector<LedgerEvent> generate_ledger(const SynthSpec& spec);

DayRange synth_range(const SynthSpec& spec);

}  // namespace nfx
