#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nfx/date.hpp"
#include "nfx/ingest.hpp"

namespace nfx {

/// Sender literal for issuance rows. Never counted as an address.
inline constexpr std::string_view kMintSource = "__MINT__";

struct LedgerEvent {
  Date day;
  std::string sender;
  std::string receiver;
  double amount = 0.0;

  bool operator==(const LedgerEvent&) const = default;
};

struct WindowSpec {
  std::int32_t length_days = 183;
};

/// Inclusive day range a derived series covers.
struct DayRange {
  Date first;
  Date last;

  std::size_t size() const noexcept { return static_cast<std::size_t>(last - first + 1); }
};

using AddressId = std::uint32_t;
inline constexpr AddressId kMintId = 0;

/// Events with addresses interned to dense ids (id 0 is the mint source) and
/// days stored as offsets from `range.first`.
struct InternedLedger {
  DayRange range;
  std::vector<std::int32_t> day;
  std::vector<AddressId> sender;
  std::vector<AddressId> receiver;
  std::vector<double> amount;
  std::size_t address_count = 1;

  std::size_t size() const noexcept { return day.size(); }
};

/// Interns addresses and checks ordering. The covered range defaults to the
/// first..last event day; an explicit range must contain every event.
InternedLedger intern(std::span<const LedgerEvent> events, std::optional<DayRange> range = std::nullopt);

/// Addresses with balance > 0 at the end of each day (AdrBalCnt).
std::vector<std::int64_t> derive_balance_counts(const InternedLedger& ledger);
std::vector<std::int64_t> derive_balance_counts(std::span<const LedgerEvent> events,
                                                std::optional<DayRange> range = std::nullopt);

struct ActiveCounts {
  /// Distinct addresses active on the day (AdrActCnt).
  std::vector<std::int64_t> daily;
  /// Distinct addresses active in the trailing window ending on the day,
  /// truncated at the start of the range.
  std::vector<std::int64_t> windowed;
};

ActiveCounts derive_active_counts(const InternedLedger& ledger, WindowSpec window);
ActiveCounts derive_active_counts(std::span<const LedgerEvent> events, WindowSpec window,
                                  std::optional<DayRange> range = std::nullopt);

/// `day,sender,receiver,amount` with a header row.
std::vector<LedgerEvent> read_events(std::istream& in);
std::vector<LedgerEvent> read_events(const std::filesystem::path& path);
void write_events(std::ostream& out, std::span<const LedgerEvent> events);

/// All three proxy columns derived from a ledger, as an AssetSeries whose value
/// columns are missing.
AssetSeries derive_proxy_series(const std::string& asset_id, const InternedLedger& ledger, WindowSpec window);

/// Fills `series.six_m_adr_act_cnt` from the ledger when the column is absent.
/// Days of the series outside the ledger range stay missing.
void attach_trailing_active(AssetSeries& series, const InternedLedger& ledger, WindowSpec window);

}  // namespace nfx
