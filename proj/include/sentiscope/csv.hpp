#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "sentiscope/error.hpp"

namespace sentiscope::csv {

struct Record {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
};

/// Splits RFC 4180 text into records. Quoted fields may hold commas,
/// doubled quotes and newlines. Blank lines are skipped; CRLF is accepted.
[[nodiscard]] inline std::vector<Record> parse(std::string_view text, const std::string& source) {
    std::vector<Record> records;
    Record rec;
    std::string field;
    std::size_t line = 1;
    rec.line = 1;
    bool quoted = false;
    bool field_started = false;
    bool after_quote = false;

    auto end_field = [&] {
        rec.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
        after_quote = false;
    };
    auto end_record = [&] {
        const bool blank = rec.fields.empty() && !field_started && field.empty();
        if (!blank) {
            end_field();
            records.push_back(std::move(rec));
        }
        rec = Record{};
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                    after_quote = true;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == ',') {
            end_field();
            field_started = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            ++line;
            rec.line = line;
        } else if (c == '"' && field.empty() && !after_quote) {
            quoted = true;
            field_started = true;
        } else {
            if (after_quote) throw InputError(at_line(source, line, "unexpected character after closing quote"));
            field.push_back(c);
            field_started = true;
        }
    }
    if (quoted) throw InputError(at_line(source, rec.line, "unterminated quoted field"));
    end_record();
    return records;
}

[[nodiscard]] inline std::vector<Record> read(std::istream& in, const std::string& source) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse(text, source);
}

[[nodiscard]] inline std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

[[nodiscard]] inline std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

/// Shortest decimal text that parses back to exactly `v`.
[[nodiscard]] inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// Parses a finite decimal number; throws InputError naming the location.
[[nodiscard]] inline double parse_number(std::string_view text, const std::string& source, std::size_t line,
                                         std::string_view what) {
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    if (b != e && *b == '+') ++b;
    const auto r = std::from_chars(b, e, v);
    if (text.empty() || r.ec != std::errc{} || r.ptr != e || !std::isfinite(v)) {
        throw InputError(at_line(source, line, "invalid number '" + std::string(text) + "' for " + std::string(what)));
    }
    return v;
}

/// Throws unless the header row equals `expected`.
inline void expect_header(const Record& header, const std::vector<std::string>& expected, const std::string& source) {
    if (header.fields != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) want += (i ? "," : "") + expected[i];
        throw InputError(at_line(source, header.line, "expected header '" + want + "'"));
    }
}

}  // namespace sentiscope::csv
