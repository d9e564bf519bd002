#include "nfx/report.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "nfx/error.hpp"
#include "nfx/synth.hpp"

namespace nfx {
namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(StemPlot, OneStemPerColoredDay) {
  const std::vector<DailyNfx> days{{Date(2020, 1, 1), 0.1, 0.01, NfxClass::Positive},
                                   {Date(2020, 1, 2), 0.0, 0.0, NfxClass::None},
                                   {Date(2020, 1, 3), -0.05, 0.0, NfxClass::Reverse}};
  const auto svg = render_stemplot(days, StemPlotSpec{});
  EXPECT_EQ(count_of(svg, "class=\"stem "), 2u);
  EXPECT_EQ(count_of(svg, "class=\"stem positive\""), 1u);
  EXPECT_EQ(count_of(svg, "stroke=\"blue\""), 1u);
  EXPECT_EQ(count_of(svg, "stroke=\"red\""), 1u);
  EXPECT_NE(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""), std::string::npos);
}

TEST(StemPlot, AllNoneHasAxesOnly) {
  std::vector<DailyNfx> days;
  for (int i = 0; i < 5; ++i) days.push_back({Date(2020, 1, 1) + i, 0.0, 0.0, NfxClass::None});
  days.push_back({Date(2020, 1, 9), NAN, 0.0, NfxClass::Undefined});
  const auto svg = render_stemplot(days, StemPlotSpec{});
  EXPECT_EQ(count_of(svg, "class=\"stem "), 0u);
  EXPECT_NE(svg.find("class=\"axes\""), std::string::npos);
}

TEST(StemPlot, StemCountEqualsNfxDaysOnFuzz) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> delta(0.0, 0.04);
  for (int round = 0; round < 20; ++round) {
    std::vector<DailyNfx> days;
    std::size_t expected = 0;
    for (int i = 0; i < 300; ++i) {
      const double dv = delta(rng), du = delta(rng) / 4;
      days.push_back({Date(2019, 1, 1) + i, dv, du, classify_day(dv, du)});
      expected += days.back().cls == NfxClass::Positive || days.back().cls == NfxClass::Reverse;
    }
    StemPlotSpec spec;
    spec.y_scale = round % 2 ? YScale::Linear : YScale::SymLog;
    spec.title = "fuzz <" + std::to_string(round) + ">";
    const auto svg = render_stemplot(days, spec);
    EXPECT_EQ(count_of(svg, "class=\"stem "), expected);
    EXPECT_NE(svg.find("fuzz &lt;"), std::string::npos);
  }
}

TEST(StemPlot, Errors) {
  try {
    render_stemplot({}, StemPlotSpec{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
  const std::vector<DailyNfx> days{{Date(2020, 1, 1), 0.1, 0.0, NfxClass::Positive}};
  StemPlotSpec tiny;
  tiny.width_px = 99;
  EXPECT_THROW(render_stemplot(days, tiny), Error);
}

TEST(StemPlot, MetcalfeGoldenFile) {
  SynthSpec spec;
  spec.law = ValueLaw::Metcalfe;
  spec.days = 184;  // 183 classified days
  spec.u0 = 1e4;
  spec.growth = 1.01;
  const auto days = classify_series(generate(spec), {});
  ASSERT_EQ(days.size(), 183u);
  StemPlotSpec plot;
  plot.title = "Metcalfe fixture";
  const auto svg = render_stemplot(days, plot);
  EXPECT_EQ(count_of(svg, "class=\"stem positive\""), 183u);
  EXPECT_EQ(count_of(svg, "class=\"stem reverse\""), 0u);

  const std::string golden_path = std::string(NFX_SOURCE_DIR) + "/tests/golden/metcalfe_183.svg";
  if (std::getenv("NFX_UPDATE_GOLDEN")) {
    std::ofstream(golden_path, std::ios::binary) << svg;
  }
  std::ifstream in(golden_path, std::ios::binary);
  ASSERT_TRUE(in) << "missing golden file " << golden_path << " (run with NFX_UPDATE_GOLDEN=1)";
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(svg, golden.str());
}

std::vector<NfxAggregate> sample_aggregates(int assets) {
  std::vector<NfxAggregate> out;
  for (int i = 0; i < assets; ++i) {
    SynthSpec spec;
    spec.asset_id = "A" + std::to_string(i);
    spec.noise_sigma = 0.05;
    spec.seed = static_cast<std::uint64_t>(i);
    spec.days = 120;
    spec.u0 = 1000;
    spec.growth = i % 2 ? 1.002 : 0.998;
    out.push_back(aggregate(classify_series(generate(spec), {}), MagnitudeRule::AbsDeltaV, spec.asset_id, {}));
  }
  return out;
}

TEST(Tables, TwoRowsPerAsset) {
  const auto aggs = sample_aggregates(6);
  const auto csv = emit_aggregate_table(aggs, TableFormat::Csv);
  const auto rows = parse_aggregate_csv(csv);
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& agg = aggs[i / 2];
    const auto& stats = i % 2 ? agg.reverse : agg.positive;
    EXPECT_EQ(rows[i].asset_id, agg.asset_id);
    EXPECT_EQ(rows[i].sign, i % 2 ? "reverse" : "positive");
    EXPECT_EQ(rows[i].total_days, agg.total_days);
    EXPECT_EQ(rows[i].nfx_days, stats.days);
    EXPECT_EQ(rows[i].strength_sum, stats.strength_sum);
    EXPECT_EQ(rows[i].prevalence, stats.prevalence);
    EXPECT_EQ(rows[i].relative_strength, stats.relative_strength);
  }

  const auto md = emit_aggregate_table(aggs, TableFormat::Markdown);
  EXPECT_EQ(count_of(md, "\n"), 14u);  // header, rule, 12 rows

  const auto json = nlohmann::json::parse(emit_aggregate_table(aggs, TableFormat::Json));
  ASSERT_EQ(json.size(), 12u);
  EXPECT_EQ(json[0].begin().key(), "asset");
}

TEST(Tables, EmptyInputIsHeaderOnly) {
  const auto csv = emit_aggregate_table({}, TableFormat::Csv);
  EXPECT_EQ(count_of(csv, "\n"), 1u);
  EXPECT_TRUE(parse_aggregate_csv(csv).empty());
  const auto md = emit_tables({}, {}, TableFormat::Markdown);
  EXPECT_NE(md.find("| Asset |"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(emit_tables({}, {}, TableFormat::Json))["aggregates"].size(), 0u);
}

TEST(Tables, Deterministic) {
  const auto aggs = sample_aggregates(3);
  std::vector<CorrelationCell> cells{{"A0", ValueProxy::TokenPrice, UserProxy::NonZeroBalanceAddresses, 0.5, 10, {}},
                                     {"A0", ValueProxy::TokenPrice, UserProxy::Trailing6MActiveAddresses, std::nullopt,
                                      0, ErrorCode::UnknownColumn}};
  for (auto f : {TableFormat::Csv, TableFormat::Json, TableFormat::Markdown}) {
    EXPECT_EQ(emit_tables(aggs, cells, f), emit_tables(aggs, cells, f));
  }
  const auto md = emit_correlation_table(cells, TableFormat::Markdown);
  EXPECT_NE(md.find("| A0 | PriceUSD | 0.500000 | - (UnknownColumn) |"), std::string::npos) << md;
  const auto csv = emit_correlation_table(cells, TableFormat::Csv);
  EXPECT_NE(csv.find("A0,PriceUSD,6MAdrActCnt,,0,UnknownColumn"), std::string::npos) << csv;
}

TEST(Tables, MarkdownRoundsToThreeDecimals) {
  NfxAggregate a;
  a.asset_id = "BTC";
  a.total_days = 3461;
  a.delta_days = 3461;
  a.positive = make_sign_stats(3461, 1434, 47.1);
  a.reverse = make_sign_stats(3461, 243, 9.2);
  const auto md = emit_aggregate_table(std::span(&a, 1), TableFormat::Markdown);
  EXPECT_NE(md.find("| BTC | price:balcnt | positive | 3461 | 1434 | 47.100 | 0.414 | 3.285 |"), std::string::npos)
      << md;
}

TEST(ClassificationCsv, RoundTrip) {
  const std::vector<DailyNfx> days{{Date(2020, 1, 1), 0.1, 0.01, NfxClass::Positive},
                                   {Date(2020, 1, 2), NAN, 0.0, NfxClass::Undefined}};
  const auto back = parse_classification_csv(emit_classification_csv(days));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].delta_v, 0.1);
  EXPECT_EQ(back[0].cls, NfxClass::Positive);
  EXPECT_TRUE(std::isnan(back[1].delta_v));
  EXPECT_EQ(back[1].cls, NfxClass::Undefined);
}

}  // namespace
}  // namespace nfx
