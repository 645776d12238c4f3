#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sentiscope {

/// A lowercase normalized word: non-empty, no whitespace, no punctuation.
/// Emoji sequences are tokens of their own.
struct Token {
    std::string text;

    friend bool operator==(const Token&, const Token&) = default;
    friend auto operator<=>(const Token&, const Token&) = default;
};

namespace detail {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point at `i`, advancing it. Malformed or overlong
// sequences, surrogates and out-of-range values yield U+FFFD and consume
// exactly one byte.
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
        ++i;
        return kReplacement;
    }
    if (i + len > s.size()) {
        ++i;
        return kReplacement;
    }
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return kReplacement;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return kReplacement;
    }
    i += len;
    return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

enum class CharClass { word, separator, emoji, emoji_modifier, joiner, dropped };

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline CharClass classify(char32_t cp) {
    if (cp < 0x80) {
        const bool alnum = (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
                           (cp >= '0' && cp <= '9');
        return alnum ? CharClass::word : CharClass::separator;
    }
    if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7) return CharClass::separator;  // Latin-1 punctuation
    if (cp == 0x200D) return CharClass::joiner;
    if (cp >= 0xFE00 && cp <= 0xFE0F) return CharClass::dropped;  // variation selectors
    if (cp >= 0xE0020 && cp <= 0xE007F) return CharClass::emoji_modifier;  // tag sequences
    if (cp >= 0x1F3FB && cp <= 0x1F3FF) return CharClass::emoji_modifier;  // skin tones
    if ((cp >= 0x1F000 && cp <= 0x1FAFF) || (cp >= 0x2600 && cp <= 0x27BF) ||
        (cp >= 0x2300 && cp <= 0x23FF) || (cp >= 0x2B00 && cp <= 0x2BFF)) {
        return CharClass::emoji;
    }
    if ((cp >= 0x2000 && cp <= 0x206F) ||  // general punctuation, spaces
        (cp >= 0x20A0 && cp <= 0x20CF) ||  // currency signs
        (cp >= 0x2100 && cp <= 0x22FF) ||  // letterlike, arrows, math operators
        (cp >= 0x2400 && cp <= 0x25FF) ||  // control pictures, box drawing, shapes
        (cp >= 0x3000 && cp <= 0x303F) ||  // CJK punctuation
        (cp >= 0xFE10 && cp <= 0xFE6F) ||  // vertical / small form punctuation
        (cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
        (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65) ||
        (cp >= 0xFFF0 && cp <= 0xFFFF) || cp == 0x00A0) {
        return CharClass::separator;
    }
    return CharClass::word;
}

inline char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp < 0xC0) return cp;
    if (cp <= 0xDE && cp != 0xD7) return cp + 0x20;                 // Latin-1
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;  // Greek
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;                // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

inline bool is_regional_indicator(char32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }

inline bool is_scheme_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '+' || c == '.' || c == '-';
}

inline bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

inline bool is_mention_char(char32_t cp) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9') ||
           cp == '_';
}

// Blanks every `scheme://...` run up to the next ASCII whitespace.
inline std::string strip_urls(std::string_view text) {
    std::string out(text);
    std::size_t from = 0;
    while (true) {
        const std::size_t sep = out.find("://", from);
        if (sep == std::string::npos) break;
        std::size_t begin = sep;
        while (begin > 0 && is_scheme_char(out[begin - 1])) --begin;
        while (begin < sep && !is_ascii_alpha(out[begin])) ++begin;
        if (begin == sep) {
            from = sep + 3;
            continue;
        }
        std::size_t end = sep + 3;
        while (end < out.size() && !is_ascii_space(out[end])) ++end;
        for (std::size_t k = begin; k < end; ++k) out[k] = ' ';
        from = end;
    }
    return out;
}

}  // namespace detail

/// Splits social-media text into normalized tokens.
///
/// URLs (`scheme://...`) and @-mentions are removed, the rest is lowercased
/// and split on whitespace and punctuation. '#' is punctuation, so hashtags
/// keep their word. Each emoji (with its modifiers, ZWJ sequence or flag
/// pair) becomes one token. Invalid UTF-8 decodes to U+FFFD, which splits
/// like punctuation. tokenize(t.text) == {t} for every produced token.
[[nodiscard]] inline std::vector<Token> tokenize(std::string_view text) {
    using detail::CharClass;
    const std::string cleaned = detail::strip_urls(text);

    std::vector<Token> tokens;
    std::string current;
    bool current_is_emoji = false;
    bool pending_join = false;  // emoji token followed by ZWJ
    bool pending_flag = false;  // emoji token is a lone regional indicator
    bool prev_word = false;     // previous code point was a word character

    auto flush = [&] {
        if (!current.empty()) tokens.push_back(Token{std::move(current)});
        current.clear();
        current_is_emoji = false;
        pending_join = false;
        pending_flag = false;
    };

    std::size_t i = 0;
    while (i < cleaned.size()) {
        char32_t cp = detail::decode_utf8(cleaned, i);
        const CharClass cls = cp == detail::kReplacement ? CharClass::separator : detail::classify(cp);

        if (cp == '@' && !prev_word) {
            flush();
            std::size_t j = i;
            while (j < cleaned.size()) {
                std::size_t k = j;
                if (!detail::is_mention_char(detail::decode_utf8(cleaned, k))) break;
                j = k;
            }
            i = j;
            prev_word = false;
            continue;
        }

        switch (cls) {
            case CharClass::word:
                if (current_is_emoji) flush();
                detail::append_utf8(current, detail::to_lower(cp));
                prev_word = true;
                break;
            case CharClass::emoji: {
                const bool flag_pair = pending_flag && detail::is_regional_indicator(cp);
                if (current_is_emoji && (pending_join || flag_pair)) {
                    if (pending_join) detail::append_utf8(current, 0x200D);
                    detail::append_utf8(current, cp);
                    pending_join = false;
                    pending_flag = false;
                } else {
                    flush();
                    detail::append_utf8(current, cp);
                    current_is_emoji = true;
                    pending_flag = detail::is_regional_indicator(cp);
                }
                prev_word = false;
                break;
            }
            case CharClass::emoji_modifier:
                if (current_is_emoji && !pending_join) {
                    detail::append_utf8(current, cp);
                } else {
                    flush();
                    detail::append_utf8(current, cp);
                    current_is_emoji = true;
                }
                pending_flag = false;
                prev_word = false;
                break;
            case CharClass::joiner:
                if (current_is_emoji && !pending_join) {
                    pending_join = true;
                } else {
                    flush();
                }
                prev_word = false;
                break;
            case CharClass::dropped:
                break;
            case CharClass::separator:
                flush();
                prev_word = false;
                break;
        }
    }
    flush();
    return tokens;
}

/// Joins token texts with single spaces.
[[nodiscard]] inline std::string join_tokens(const std::vector<Token>& tokens) {
    std::string out;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (k) out.push_back(' ');
        out += tokens[k].text;
    }
    return out;
}

}  // namespace sentiscope
