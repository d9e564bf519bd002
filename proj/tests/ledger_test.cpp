#include "nfx/ledger.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "nfx/error.hpp"
#include "oracles.hpp"

namespace nfx {
namespace {

const Date kDay1(2021, 3, 1);
const std::string kMint(kMintSource);

TEST(BalanceCounts, FullTransfer) {
  const std::vector<LedgerEvent> events{{kDay1, kMint, "A", 5}, {kDay1 + 1, "A", "B", 5}};
  EXPECT_EQ(derive_balance_counts(events), (std::vector<std::int64_t>{1, 1}));
}

TEST(BalanceCounts, PartialTransfer) {
  const std::vector<LedgerEvent> events{{kDay1, kMint, "A", 5}, {kDay1 + 1, "A", "B", 2}};
  EXPECT_EQ(derive_balance_counts(events), (std::vector<std::int64_t>{1, 2}));
}

TEST(BalanceCounts, ExplicitRangeCarriesForward) {
  const std::vector<LedgerEvent> events{{kDay1 + 1, kMint, "A", 5}};
  EXPECT_EQ(derive_balance_counts(events, DayRange{kDay1, kDay1 + 3}), (std::vector<std::int64_t>{0, 1, 1, 1}));
}

TEST(BalanceCounts, DecimalDustSettlesToZero) {
  const std::vector<LedgerEvent> events{
      {kDay1, kMint, "A", 0.1}, {kDay1, kMint, "A", 0.2}, {kDay1 + 1, "A", "B", 0.3}};
  EXPECT_EQ(derive_balance_counts(events), (std::vector<std::int64_t>{1, 1}));
}

TEST(BalanceCounts, Errors) {
  const std::vector<LedgerEvent> overspend{{kDay1, kMint, "A", 5}, {kDay1, "A", "B", 6}};
  try {
    derive_balance_counts(overspend);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeBalance);
  }
  const std::vector<LedgerEvent> unsorted{{kDay1 + 1, kMint, "A", 5}, {kDay1, kMint, "B", 6}};
  try {
    derive_balance_counts(unsorted);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsortedInput);
  }
}

TEST(BalanceCounts, MatchesFullRecountOracle) {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 5; ++round) {
    const auto events = oracle::random_ledger(rng, 1000, 30, 60);
    const DayRange range{Date(2020, 1, 1), Date(2020, 1, 30)};
    ASSERT_EQ(derive_balance_counts(events, range), oracle::balance_counts(events, range)) << "round " << round;
  }
}

TEST(ActiveCounts, SingleEventWindow) {
  const std::vector<LedgerEvent> events{{kDay1, "A", "B", 1}};
  const DayRange range{kDay1, kDay1 + 199};
  const auto counts = derive_active_counts(events, WindowSpec{183}, range);
  ASSERT_EQ(counts.daily.size(), 200u);
  EXPECT_EQ(counts.daily[0], 2);
  for (std::size_t d = 1; d < 200; ++d) EXPECT_EQ(counts.daily[d], 0);
  for (std::size_t d = 0; d < 183; ++d) EXPECT_EQ(counts.windowed[d], 2) << d;
  for (std::size_t d = 183; d < 200; ++d) EXPECT_EQ(counts.windowed[d], 0) << d;
}

TEST(ActiveCounts, RepeatActivityNotDoubleCounted) {
  std::vector<LedgerEvent> events;
  for (int d = 0; d < 10; ++d) events.push_back({kDay1 + d, kMint, "A", 1});
  const auto counts = derive_active_counts(events, WindowSpec{3});
  for (auto c : counts.windowed) EXPECT_EQ(c, 1);
  for (auto c : counts.daily) EXPECT_EQ(c, 1);
}

TEST(ActiveCounts, ZeroAmountAndSelfTransfersMarkActive) {
  const std::vector<LedgerEvent> events{{kDay1, "A", "B", 0}, {kDay1, "C", "C", 0}};
  const auto counts = derive_active_counts(events, WindowSpec{1});
  EXPECT_EQ(counts.daily[0], 3);
}

TEST(ActiveCounts, MatchesNaiveRecount) {
  std::mt19937_64 rng(2);
  const DayRange range{Date(2020, 1, 1), Date(2020, 1, 1) + 399};
  const auto events = oracle::random_ledger(rng, 10000, 400, 3000);
  std::vector<std::int64_t> daily, windowed;
  oracle::active_counts(events, range, 183, daily, windowed);
  const auto counts = derive_active_counts(events, WindowSpec{183}, range);
  EXPECT_EQ(counts.daily, daily);
  EXPECT_EQ(counts.windowed, windowed);
}

TEST(ActiveCounts, WindowProperties) {
  std::mt19937_64 rng(4);
  const auto events = oracle::random_ledger(rng, 3000, 120, 400);
  const auto ledger = intern(events);
  const auto one = derive_active_counts(ledger, WindowSpec{1});
  EXPECT_EQ(one.windowed, one.daily);

  std::vector<std::int64_t> cumulative;
  std::set<AddressId> seen;
  std::size_t i = 0;
  for (std::int32_t d = 0; d < static_cast<std::int32_t>(ledger.range.size()); ++d) {
    for (; i < ledger.size() && ledger.day[i] == d; ++i) {
      if (ledger.sender[i] != kMintId) seen.insert(ledger.sender[i]);
      if (ledger.receiver[i] != kMintId) seen.insert(ledger.receiver[i]);
    }
    cumulative.push_back(static_cast<std::int64_t>(seen.size()));
  }

  auto previous = one.windowed;
  for (std::int32_t length : {2, 7, 30, 183, 1000}) {
    const auto counts = derive_active_counts(ledger, WindowSpec{length});
    for (std::size_t d = 0; d < counts.windowed.size(); ++d) {
      ASSERT_GE(counts.windowed[d], previous[d]);
      ASSERT_LE(counts.windowed[d], cumulative[d]);
    }
    previous = counts.windowed;
  }
  EXPECT_EQ(previous, cumulative);  // window longer than the range
}

TEST(ActiveCounts, RejectsBadWindow) {
  const std::vector<LedgerEvent> events{{kDay1, "A", "B", 1}};
  EXPECT_THROW(derive_active_counts(events, WindowSpec{0}), Error);
}

TEST(EventLog, ReadWrite) {
  const std::vector<LedgerEvent> events{{kDay1, kMint, "A", 5}, {kDay1 + 1, "A", "B,quoted", 2.5}};
  std::stringstream buf;
  write_events(buf, events);
  EXPECT_EQ(read_events(buf), events);

  std::istringstream bad_header("when,from,to,amount\n");
  EXPECT_THROW(read_events(bad_header), Error);
  std::istringstream bad_amount("day,sender,receiver,amount\n2021-01-01,A,B,-1\n");
  EXPECT_THROW(read_events(bad_amount), Error);
}

TEST(DeriveProxySeries, ColumnsAndAttach) {
  const std::vector<LedgerEvent> events{
      {kDay1, kMint, "A", 5}, {kDay1 + 1, "A", "B", 2}, {kDay1 + 2, "B", "C", 2}};
  const auto ledger = intern(events);
  const auto s = derive_proxy_series("X", ledger, WindowSpec{2});
  EXPECT_EQ(s.adr_bal_cnt, (std::vector<CountCell>{1, 2, 2}));
  EXPECT_EQ(s.adr_act_cnt, (std::vector<CountCell>{1, 2, 2}));
  EXPECT_EQ(*s.six_m_adr_act_cnt, (std::vector<CountCell>{1, 2, 3}));

  AssetSeries other;
  other.dates = {kDay1 + 1, kDay1 + 2, kDay1 + 3};
  attach_trailing_active(other, ledger, WindowSpec{2});
  EXPECT_EQ(*other.six_m_adr_act_cnt, (std::vector<CountCell>{2, 3, std::nullopt}));
}

}  // namespace
}  // namespace nfx
