#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nfx {

/// Calendar day (UTC). Thin wrapper around a day count since 1970-01-01 so it
/// can be used as an array offset and hashed.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days d) : days_(d.time_since_epoch().count()) {}
  constexpr Date(int y, unsigned m, unsigned d)
      : Date(std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}}) {}

  static constexpr Date from_serial(std::int32_t days_since_epoch) {
    Date out;
    out.days_ = days_since_epoch;
    return out;
  }

  constexpr std::int32_t serial() const noexcept { return days_; }
  constexpr std::chrono::sys_days sys_days() const noexcept {
    return std::chrono::sys_days{std::chrono::days{days_}};
  }
  constexpr std::chrono::year_month_day ymd() const noexcept { return std::chrono::year_month_day{sys_days()}; }

  constexpr Date operator+(std::int32_t n) const noexcept { return from_serial(days_ + n); }
  constexpr Date operator-(std::int32_t n) const noexcept { return from_serial(days_ - n); }
  constexpr std::int32_t operator-(Date other) const noexcept { return days_ - other.days_; }
  constexpr Date& operator++() noexcept {
    ++days_;
    return *this;
  }
  constexpr Date operator++(int) noexcept {
    Date before = *this;
    ++days_;
    return before;
  }

  constexpr auto operator<=>(const Date&) const = default;

  /// YYYY-MM-DD
  std::string iso() const;

 private:
  std::int32_t days_ = 0;
};

/// Accepts `YYYY-MM-DD`, optionally followed by a time part (`T...` or a
/// space), as found in vendor exports. Returns nullopt on anything else.
std::optional<Date> parse_date(std::string_view text);

}  // namespace nfx
