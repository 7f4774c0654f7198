#include "knowsearch/date.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace knowsearch {

namespace {

bool parse_digits(std::string_view s, unsigned& out) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  unsigned y = 0, m = 0, d = 0;
  if (!parse_digits(iso.substr(0, 4), y) || !parse_digits(iso.substr(5, 2), m) ||
      !parse_digits(iso.substr(8, 2), d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(y)}, std::chrono::month{m},
                                  std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return Date(static_cast<int>(y), m, d);
}

Date Date::from_days(long days_since_epoch) {
  std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days_since_epoch}}};
  return Date(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
              static_cast<unsigned>(ymd.day()));
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year_, month_, day_);
  return buf;
}

long Date::days_since_epoch() const {
  std::chrono::year_month_day ymd{std::chrono::year{year_}, std::chrono::month{month_},
                                  std::chrono::day{day_}};
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

}  // namespace knowsearch
