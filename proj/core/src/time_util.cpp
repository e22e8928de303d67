#include "afcsim/time_util.hpp"

#include <cstdio>
#include <ctime>

#include "afcsim/errors.hpp"

namespace afcsim {
namespace {

std::tm to_tm(UtcSeconds t) {
  const std::time_t tt = static_cast<std::time_t>(t);
  std::tm out{};
  gmtime_r(&tt, &out);
  return out;
}

std::string format_with(UtcSeconds t, const char* pattern) {
  const std::tm tm = to_tm(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, pattern, tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace

std::string format_iso8601(UtcSeconds t) {
  return format_with(t, "%04d-%02d-%02dT%02d:%02d:%02dZ");
}

std::string format_console_time(UtcSeconds t) {
  return format_with(t, "%04d-%02d-%02d %02d:%02d:%02d");
}

UtcSeconds parse_iso8601(std::string_view text) {
  // Fixed layout: YYYY-MM-DDTHH:MM:SS[Z]
  const bool zulu = text.size() == 20 && text.back() == 'Z';
  if (text.size() != 19 && !zulu) {
    throw ParseError("expected ISO-8601 UTC time 'YYYY-MM-DDTHH:MM:SSZ', got '" +
                     std::string(text) + "'");
  }
  auto digits = [&](std::size_t pos, std::size_t n) {
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
      const char c = text[i];
      if (c < '0' || c > '9') {
        throw ParseError("malformed ISO-8601 time '" + std::string(text) + "'");
      }
      v = v * 10 + (c - '0');
    }
    return v;
  };
  if (text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' || text[16] != ':') {
    throw ParseError("malformed ISO-8601 time '" + std::string(text) + "'");
  }
  std::tm tm{};
  tm.tm_year = digits(0, 4) - 1900;
  tm.tm_mon = digits(5, 2) - 1;
  tm.tm_mday = digits(8, 2);
  tm.tm_hour = digits(11, 2);
  tm.tm_min = digits(14, 2);
  tm.tm_sec = digits(17, 2);
  if (tm.tm_mon < 0 || tm.tm_mon > 11 || tm.tm_mday < 1 || tm.tm_mday > 31 || tm.tm_hour > 23 ||
      tm.tm_min > 59 || tm.tm_sec > 60) {
    throw ParseError("out-of-range field in time '" + std::string(text) + "'");
  }
  const UtcSeconds t = static_cast<UtcSeconds>(timegm(&tm));
  // timegm normalizes silently; reject dates like Feb 30.
  if (format_iso8601(t).substr(0, 19) != text.substr(0, 19)) {
    throw ParseError("nonexistent calendar time '" + std::string(text) + "'");
  }
  return t;
}

}  // namespace afcsim
