#include "nfx/synth.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "nfx/classify.hpp"
#include "nfx/error.hpp"
#include "nfx/ledger.hpp"
#include "oracles.hpp"

namespace nfx {
namespace {

TEST(Generate, MetcalfeIsAlwaysPositiveWithDoubleElasticity) {
  SynthSpec spec;
  spec.law = ValueLaw::Metcalfe;
  spec.growth = 1.01;
  spec.u0 = 1000;
  spec.days = 200;
  const auto s = generate(spec);
  for (const auto& pair : all_pairs()) {
    for (const auto& day : classify_series(s, pair)) {
      ASSERT_EQ(day.cls, NfxClass::Positive);
      ASSERT_NEAR(day.delta_v, 2.0 * day.delta_u, 1e-9);
    }
  }
}

TEST(Generate, LinearLawIsNeverNfx) {
  for (double scale : {1.0, 4.0, 0.25}) {
    SynthSpec spec;
    spec.law = ValueLaw::Linear;
    spec.scale = scale;
    spec.days = 300;
    spec.u0 = 50;
    for (double growth : {1.02, 0.99}) {
      spec.growth = growth;
      for (const auto& day : classify_series(generate(spec), {})) ASSERT_EQ(day.cls, NfxClass::None);
    }
  }
}

TEST(Generate, NoGrowthMeansNoMovement) {
  for (auto law : {ValueLaw::Linear, ValueLaw::NLogN, ValueLaw::Metcalfe, ValueLaw::Exponential, ValueLaw::NoiseOnly}) {
    SynthSpec spec;
    spec.law = law;
    spec.growth = 1.0;
    spec.u0 = 20;
    spec.days = 30;
    for (const auto& day : classify_series(generate(spec), {})) {
      EXPECT_EQ(day.delta_v, 0.0);
      EXPECT_EQ(day.delta_u, 0.0);
      EXPECT_EQ(day.cls, NfxClass::None);
    }
  }
}

TEST(Generate, ElasticityAtLargeUserbase) {
  struct Case {
    ValueLaw law;
    double elasticity;
  };
  for (auto [law, elasticity] : {Case{ValueLaw::Linear, 1.0}, Case{ValueLaw::Metcalfe, 2.0}}) {
    SynthSpec spec;
    spec.law = law;
    spec.u0 = 1e4;
    spec.growth = 1.003;
    spec.days = 100;
    for (const auto& d : log_deltas(generate(spec), {})) {
      if (d.delta_u != 0.0) ASSERT_NEAR(d.delta_v / d.delta_u, elasticity, 1e-6);
    }
  }
}

TEST(Generate, ColumnsAndDeterminism) {
  SynthSpec spec;
  spec.noise_sigma = 0.2;
  spec.seed = 5;
  spec.days = 50;
  const auto a = generate(spec);
  const auto b = generate(spec);
  std::ostringstream sa, sb;
  write_series(sa, a);
  write_series(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.size(), 50u);
  EXPECT_EQ(*a.six_m_adr_act_cnt, a.adr_bal_cnt);
  EXPECT_NE(a.price_usd, a.tx_tfr_val_adj_usd);  // independent noise
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_GE(*(*a.six_m_adr_act_cnt)[i], *a.adr_act_cnt[i]);

  spec.seed = 6;
  EXPECT_NE(generate(spec).price_usd, a.price_usd);
}

TEST(Generate, InvalidSpecs) {
  const auto invalid = [](SynthSpec spec) {
    try {
      generate(spec);
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidSpec;
    }
    return false;
  };
  SynthSpec s;
  s.days = 1;
  EXPECT_TRUE(invalid(s));
  s = {};
  s.u0 = 0;
  EXPECT_TRUE(invalid(s));
  s = {};
  s.growth = -1;
  EXPECT_TRUE(invalid(s));
  s = {};
  s.noise_sigma = -0.1;
  EXPECT_TRUE(invalid(s));
  s = {};
  s.law = ValueLaw::Exponential;  // 2^100000 overflows
  EXPECT_TRUE(invalid(s));
}

TEST(GenerateLedger, ConstantUserbase) {
  SynthSpec spec;
  spec.u0 = 5;
  spec.growth = 1.0;
  spec.days = 10;
  const auto events = generate_ledger(spec);
  EXPECT_EQ(derive_balance_counts(events, synth_range(spec)), std::vector<std::int64_t>(10, 5));
}

TEST(GenerateLedger, OneNewAddressPerDay) {
  // u0 * growth^t rounds to t + 1 only for linear paths, so build one directly.
  SynthSpec spec;
  spec.u0 = 1;
  spec.growth = 1.0;
  spec.days = 12;
  std::vector<LedgerEvent> events;
  for (std::int32_t t = 0; t < spec.days; ++t) {
    events.push_back({spec.start + t, std::string(kMintSource), "addr" + std::to_string(t), 1.0});
  }
  std::vector<std::int64_t> expected(spec.days);
  for (std::int32_t t = 0; t < spec.days; ++t) expected[t] = t + 1;
  EXPECT_EQ(derive_balance_counts(events, synth_range(spec)), expected);
}

TEST(GenerateLedger, TracksFuzzedUserbasePaths) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> growth(0.95, 1.05);
  std::uniform_real_distribution<double> u0(1.0, 300.0);
  std::uniform_int_distribution<std::int32_t> days(2, 150);
  for (int round = 0; round < 40; ++round) {
    SynthSpec spec;
    spec.growth = growth(rng);
    spec.u0 = u0(rng);
    spec.days = days(rng);
    spec.seed = rng();
    const auto events = generate_ledger(spec);
    const auto range = synth_range(spec);
    const auto derived = derive_balance_counts(events, range);
    ASSERT_EQ(derived, userbase_path(spec)) << "round " << round;
    if (round < 5) ASSERT_EQ(derived, oracle::balance_counts(events, range));
    EXPECT_EQ(events, generate_ledger(spec));

    // every day carries activity
    const auto active = derive_active_counts(events, WindowSpec{1}, range);
    for (auto c : active.daily) ASSERT_GT(c, 0);
  }
}

TEST(ValueLaw, Parse) {
  EXPECT_EQ(parse_value_law("metcalfe"), ValueLaw::Metcalfe);
  EXPECT_EQ(parse_value_law("nlogn"), ValueLaw::NLogN);
  EXPECT_THROW(parse_value_law("gompertz"), Error);
}

}  // namespace
}  // namespace nfx
