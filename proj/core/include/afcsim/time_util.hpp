#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace afcsim {

// Seconds since 1970-01-01T00:00:00Z. All simulated clocks use this.
using UtcSeconds = std::int64_t;

inline constexpr std::int64_t kSecondsPerDay = 86'400;

// "2025-06-20T05:13:13Z"
std::string format_iso8601(UtcSeconds t);

// "2025-06-20 05:13:13", the AP console layout.
std::string format_console_time(UtcSeconds t);

// Accepts "YYYY-MM-DDTHH:MM:SS" with an optional trailing 'Z'.
// Throws ParseError on anything else.
UtcSeconds parse_iso8601(std::string_view text);

// 00:00:00 UTC of the day containing t.
constexpr UtcSeconds start_of_day(UtcSeconds t) {
  const auto r = t % kSecondsPerDay;
  return t - (r < 0 ? r + kSecondsPerDay : r);
}

}  // namespace afcsim
