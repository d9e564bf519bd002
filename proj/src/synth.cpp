#include "nfx/synth.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "nfx/error.hpp"

namespace nfx {

std::string_view to_string(ValueLaw law) noexcept {
  switch (law) {
    case ValueLaw::Linear: return "linear";
    case ValueLaw::NLogN: return "nlogn";
    case ValueLaw::Metcalfe: return "metcalfe";
    case ValueLaw::Exponential: return "exponential";
    case ValueLaw::NoiseOnly: return "noise";
  }
  return "noise";
}

ValueLaw parse_value_law(std::string_view text) {
  for (auto law : {ValueLaw::Linear, ValueLaw::NLogN, ValueLaw::Metcalfe, ValueLaw::Exponential, ValueLaw::NoiseOnly}) {
    if (text == to_string(law)) return law;
  }
  fail(ErrorCode::InvalidArgument,
       fmt::format("bad law '{}': expected linear, nlogn, metcalfe, exponential or noise", text));
}

void check_spec(const SynthSpec& spec) {
  const auto bad = [](const std::string& why) { fail(ErrorCode::InvalidSpec, "synth spec: " + why); };
  if (spec.days < 2) bad("days must be >= 2");
  if (!(spec.u0 > 0.0) || !std::isfinite(spec.u0)) bad("u0 must be positive");
  if (!(spec.growth > 0.0) || !std::isfinite(spec.growth)) bad("growth must be positive");
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) bad("noise sigma must be >= 0");
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) bad("scale must be positive");
  if (spec.asset_id.empty()) bad("asset id must be nonempty");
  const double last = spec.u0 * std::pow(spec.growth, spec.days - 1);
  if (!(std::max(spec.u0, last) < 9.0e15)) bad("userbase exceeds the exactly representable integer range");
}

std::vector<std::int64_t> userbase_path(const SynthSpec& spec) {
  check_spec(spec);
  std::vector<std::int64_t> u(spec.days);
  for (std::int32_t t = 0; t < spec.days; ++t) {
    u[t] = std::max<std::int64_t>(1, std::llround(spec.u0 * std::pow(spec.growth, t)));
  }
  return u;
}

DayRange synth_range(const SynthSpec& spec) { return {spec.start, spec.start + (spec.days - 1)}; }

namespace {

double law_value(ValueLaw law, double scale, std::int64_t users) {
  const double u = static_cast<double>(users);
  switch (law) {
    case ValueLaw::Linear: return scale * u;
    case ValueLaw::NLogN: return scale * u * std::log(u);
    case ValueLaw::Metcalfe: return scale * (u * u);
    case ValueLaw::Exponential: return users > 4096 ? HUGE_VAL : std::ldexp(scale, static_cast<int>(users));
    case ValueLaw::NoiseOnly: return scale;
  }
  return scale;
}

}  // namespace

AssetSeries generate(const SynthSpec& spec) {
  const auto users = userbase_path(spec);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  AssetSeries out;
  out.asset_id = spec.asset_id;
  out.six_m_adr_act_cnt.emplace();
  for (std::int32_t t = 0; t < spec.days; ++t) {
    const double base = law_value(spec.law, spec.scale, users[t]);
    if (!std::isfinite(base)) {
      fail(ErrorCode::InvalidSpec,
           fmt::format("synth spec: {} law overflows at day {} (u = {})", to_string(spec.law), t, users[t]));
    }
    const double price_noise = std::exp(spec.noise_sigma * normal(rng));
    const double txval_noise = std::exp(spec.noise_sigma * normal(rng));
    out.dates.push_back(spec.start + t);
    out.price_usd.push_back(base * price_noise);
    out.tx_tfr_val_adj_usd.push_back(base * txval_noise);
    out.adr_bal_cnt.push_back(users[t]);
    out.adr_act_cnt.push_back(std::max<std::int64_t>(1, users[t] / 10));
    out.six_m_adr_act_cnt->push_back(users[t]);
  }
  return out;
}

std::vector<LedgerEvent> generate_ledger(const SynthSpec& spec) {
  const auto target = userbase_path(spec);
  std::mt19937_64 rng(spec.seed);

  std::vector<std::string> holders;
  std::vector<double> balance;
  std::size_t next_address = 0;
  const auto fresh = [&] { return fmt::format("{}{:08d}", spec.asset_id, next_address++); };
  const auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  std::vector<LedgerEvent> events;
  for (std::int32_t t = 0; t < spec.days; ++t) {
    const Date day = spec.start + t;
    const auto want = static_cast<std::size_t>(target[t]);

    while (holders.size() < want) {
      holders.push_back(fresh());
      balance.push_back(1024.0);
      events.push_back({day, std::string(kMintSource), holders.back(), 1024.0});
    }
    while (holders.size() > want) {
      // merge one holder into another: the sender's balance goes to zero
      const std::size_t from = pick(holders.size());
      std::size_t to = pick(holders.size() - 1);
      if (to >= from) ++to;
      events.push_back({day, holders[from], holders[to], balance[from]});
      balance[to] += balance[from];
      holders[from] = std::move(holders.back());
      balance[from] = balance.back();
      holders.pop_back();
      balance.pop_back();
    }

    // one count-preserving transfer so every day has activity
    if (holders.size() >= 2) {
      const std::size_t from = pick(holders.size());
      std::size_t to = pick(holders.size() - 1);
      if (to >= from) ++to;
      const double amount = balance[from] / 2.0;
      events.push_back({day, holders[from], holders[to], amount});
      balance[from] -= amount;
      balance[to] += amount;
    } else {
      events.push_back({day, holders.front(), fresh(), 0.0});
    }
  }
  return events;
}

}  // namespace nfx
