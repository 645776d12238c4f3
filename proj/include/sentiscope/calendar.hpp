#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <string>
#include <string_view>

#include "sentiscope/error.hpp"

namespace sentiscope {

using Day = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;

namespace detail {

inline bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return std::from_chars(s.data() + pos, s.data() + pos + len, out).ec == std::errc{};
}

inline bool make_day(int y, int m, int d, Day& out) {
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return false;
    out = Day{ymd};
    return true;
}

}  // namespace detail

/// Parses `YYYY-MM-DD`.
[[nodiscard]] inline Day parse_date(std::string_view s) {
    int y = 0, m = 0, d = 0;
    Day out;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !detail::read_int(s, 0, 4, y) ||
        !detail::read_int(s, 5, 2, m) || !detail::read_int(s, 8, 2, d) || !detail::make_day(y, m, d, out)) {
        throw InputError("invalid date '" + std::string(s) + "' (expected YYYY-MM-DD)");
    }
    return out;
}

[[nodiscard]] inline std::string format_date(Day day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

/// Parses ISO-8601 `YYYY-MM-DDTHH:MM:SS[.fff](Z|+HH:MM|-HH:MM)` and
/// normalizes to UTC. The offset is mandatory; fractional seconds are
/// truncated. Years outside 1990..2100 are rejected.
[[nodiscard]] inline Timestamp parse_timestamp(std::string_view s) {
    auto fail = [&]() -> Timestamp {
        throw InputError("invalid timestamp '" + std::string(s) + "' (expected ISO-8601 with offset)");
    };
    if (s.size() < 20 || (s[10] != 'T' && s[10] != 't' && s[10] != ' ')) return fail();
    Day day;
    try {
        day = parse_date(s.substr(0, 10));
    } catch (const InputError&) {
        return fail();
    }
    int hh = 0, mm = 0, ss = 0;
    if (!detail::read_int(s, 11, 2, hh) || s[13] != ':' || !detail::read_int(s, 14, 2, mm) || s[16] != ':' ||
        !detail::read_int(s, 17, 2, ss) || hh > 23 || mm > 59 || ss > 60) {
        return fail();
    }
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        const std::size_t digits = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == digits) return fail();
    }
    int offset_minutes = 0;
    if (pos < s.size() && (s[pos] == 'Z' || s[pos] == 'z')) {
        ++pos;
    } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        int oh = 0, om = 0;
        if (!detail::read_int(s, pos + 1, 2, oh) || pos + 3 >= s.size() || s[pos + 3] != ':' ||
            !detail::read_int(s, pos + 4, 2, om) || oh > 23 || om > 59) {
            return fail();
        }
        offset_minutes = (s[pos] == '+' ? 1 : -1) * (oh * 60 + om);
        pos += 6;
    } else {
        return fail();
    }
    if (pos != s.size()) return fail();

    const int year = static_cast<int>(std::chrono::year_month_day{day}.year());
    if (year < 1990 || year > 2100) {
        throw InputError("timestamp '" + std::string(s) + "' outside the accepted range 1990..2100");
    }
    using namespace std::chrono;
    return Timestamp{day} + hours{hh} + minutes{mm} + seconds{ss} - minutes{offset_minutes};
}

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
[[nodiscard]] inline std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const Day day = floor<days>(t);
    const hh_mm_ss<seconds> tod{t - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(day).c_str(),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()));
    return buf;
}

/// UTC calendar day of an instant.
[[nodiscard]] inline Day day_of(Timestamp t) { return std::chrono::floor<std::chrono::days>(t); }

}  // namespace sentiscope
