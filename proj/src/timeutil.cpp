#include "respmon/timeutil.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "respmon/errors.hpp"

namespace respmon {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

int days_in_month(int year, int month) {
  static constexpr int lengths[] = {31, 28, 31, 30, 31, 30,
                                    31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return lengths[month - 1];
}

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("invalid " + std::string(what) + ": '" + std::string(s) +
                     "'");
  }
  return value;
}

}  // namespace

bool is_valid_date(const Date& d) {
  return d.year >= 1 && d.month >= 1 && d.month <= 12 && d.day >= 1 &&
         d.day <= days_in_month(d.year, d.month);
}

Date parse_date(std::string_view text) {
  Date d;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    d.year = parse_int(text.substr(0, 4), "year");
    d.month = parse_int(text.substr(5, 2), "month");
    d.day = parse_int(text.substr(8, 2), "day");
  } else if (text.size() == 11 && text[3] == ' ' && text[6] == ' ') {
    // Legacy capture form: "Apr 08 2017"
    const std::string_view mon = text.substr(0, 3);
    d.month = 0;
    for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
      if (mon == kMonthNames[i]) {
        d.month = static_cast<int>(i) + 1;
        break;
      }
    }
    if (d.month == 0) {
      throw ParseError("unknown month name: '" + std::string(mon) + "'");
    }
    d.day = parse_int(text.substr(4, 2), "day");
    d.year = parse_int(text.substr(7, 4), "year");
  } else {
    throw ParseError("unrecognized date: '" + std::string(text) + "'");
  }
  if (!is_valid_date(d)) {
    throw ParseError("invalid calendar date: '" + std::string(text) + "'");
  }
  return d;
}

TimeOfDay parse_time(std::string_view text) {
  if (text.size() != 8 || text[2] != ':' || text[5] != ':') {
    throw ParseError("unrecognized time: '" + std::string(text) + "'");
  }
  const int h = parse_int(text.substr(0, 2), "hour");
  const int m = parse_int(text.substr(3, 2), "minute");
  const int s = parse_int(text.substr(6, 2), "second");
  if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0 || s > 59) {
    throw ParseError("time out of range: '" + std::string(text) + "'");
  }
  return TimeOfDay{h * 3600 + m * 60 + s};
}

std::string to_string(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::string to_string(const TimeOfDay& t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", t.hour(), t.minute(),
                t.second());
  return buf;
}

std::string to_string(const DateTime& dt) {
  return to_string(dt.date) + "T" + to_string(dt.time);
}

std::int64_t days_from_civil(const Date& d) {
  // Howard Hinnant's civil-from-days inverse.
  std::int64_t y = d.year;
  const unsigned m = static_cast<unsigned>(d.month);
  const unsigned day = static_cast<unsigned>(d.day);
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t days) {
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
              static_cast<int>(d)};
}

std::int64_t epoch_seconds(const DateTime& dt) {
  return days_from_civil(dt.date) * 86400 + dt.time.seconds;
}

std::string now_utc_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace respmon
