#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace respmon {

// Calendar date. Comparable, value-semantic, no time zone attached;
// event files never carry one.
struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  auto operator<=>(const Date&) const = default;
};

// Time of day as seconds since midnight, 0..86399.
struct TimeOfDay {
  int seconds = 0;

  auto operator<=>(const TimeOfDay&) const = default;

  int hour() const { return seconds / 3600; }
  int minute() const { return (seconds / 60) % 60; }
  int second() const { return seconds % 60; }
};

struct DateTime {
  Date date;
  TimeOfDay time;

  auto operator<=>(const DateTime&) const = default;
};

struct TimeSpan {
  DateTime start;
  DateTime end;

  bool operator==(const TimeSpan&) const = default;
};

bool is_valid_date(const Date& d);

// Accepts ISO-8601 ("2017-04-08") and the legacy capture form
// ("Apr 08 2017"); both normalize to the same Date.
Date parse_date(std::string_view text);

// "HH:MM:SS", 24-hour.
TimeOfDay parse_time(std::string_view text);

std::string to_string(const Date& d);
std::string to_string(const TimeOfDay& t);

// "YYYY-MM-DDTHH:MM:SS"
std::string to_string(const DateTime& dt);

// Days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(const Date& d);

// Inverse of days_from_civil.
Date civil_from_days(std::int64_t days);

std::int64_t epoch_seconds(const DateTime& dt);

// Current wall-clock time formatted as ISO-8601 UTC with trailing 'Z'.
std::string now_utc_iso();

}  // namespace respmon
