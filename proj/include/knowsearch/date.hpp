#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace knowsearch {

// Calendar date with day precision. Ordering is chronological.
class Date {
 public:
  constexpr Date() = default;

  // Accepts exactly "YYYY-MM-DD"; returns nullopt for anything else,
  // including impossible dates such as 2021-02-30.
  static std::optional<Date> parse(std::string_view iso);
  static Date from_days(long days_since_epoch);

  std::string iso() const;
  long days_since_epoch() const;

  int year() const { return year_; }
  unsigned month() const { return month_; }
  unsigned day() const { return day_; }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  constexpr Date(int y, unsigned m, unsigned d) : year_(y), month_(m), day_(d) {}

  int year_ = 1970;
  unsigned month_ = 1;
  unsigned day_ = 1;
};

// Signed day difference later - earlier.
inline long days_between(const Date& earlier, const Date& later) {
  return later.days_since_epoch() - earlier.days_since_epoch();
}

}  // namespace knowsearch
