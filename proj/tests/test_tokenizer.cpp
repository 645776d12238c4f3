#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "oracles/reference_tokenizer.hpp"
#include "sentiscope/tokenizer.hpp"

using sentiscope::tokenize;

namespace {

std::vector<std::string> texts(const std::vector<sentiscope::Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) out.push_back(t.text);
    return out;
}

using Strings = std::vector<std::string>;

// 50 social-media style strings. The expected token lists below were
// produced by oracle::tokenize and reviewed by hand.
const std::vector<std::pair<std::string, Strings>> kFixture = {
    {"not a bad thing", {"not", "a", "bad", "thing"}},
    {"No good!!!", {"no", "good"}},
    {"", {}},
    {"   \t\n ", {}},
    {"BTC to the MOON 🚀🚀", {"btc", "to", "the", "moon", "🚀", "🚀"}},
    {"check https://t.co/abc123 now", {"check", "now"}},
    {"see http://example.com/path?x=1&y=2, ok", {"see", "ok"}},
    {"@elonmusk says hi", {"says", "hi"}},
    {"mail me at bob@example.com", {"mail", "me", "at", "bob", "example", "com"}},
    {"#Bitcoin is up", {"bitcoin", "is", "up"}},
    {"$ETH +5.2%", {"eth", "5", "2"}},
    {"don't panic", {"don", "t", "panic"}},
    {"hodl_forever", {"hodl", "forever"}},
    {"Crème Brûlée", {"crème", "brûlée"}},
    {"ΑΘΗΝΑ", {"αθηνα"}},
    {"РОСТ цены", {"рост", "цены"}},
    {"Ёлка", {"ёлка"}},
    {"wow👍🏽nice", {"wow", "👍🏽", "nice"}},
    {"👨‍👩‍👧 family", {"👨‍👩‍👧", "family"}},
    {"🇺🇸🇬🇧", {"🇺🇸", "🇬🇧"}},
    {"❤️ love", {"❤", "love"}},
    {"☀️☀️", {"☀", "☀"}},
    {"a\xff" "b", {"a", "b"}},
    {"\xc3(", {}},
    {"bad\xe2\x82thing", {"bad", "thing"}},
    {"rug-pull incoming", {"rug", "pull", "incoming"}},
    {"“quoted” text", {"quoted", "text"}},
    {"em—dash", {"em", "dash"}},
    {"x… y", {"x", "y"}},
    {"price→up", {"price", "up"}},
    {"€100 gain", {"100", "gain"}},
    {"BULLISH!!! @trader_1: buy", {"bullish", "buy"}},
    {"@a@b c", {"c"}},
    {"x@y", {"x", "y"}},
    {"ftp://files.example.org/a b", {"b"}},
    {"9a://zz q", {"9", "q"}},
    {"://lonely", {"lonely"}},
    {"HTTPS://T.CO/XYZ done", {"done"}},
    {"tab\tsep\rcr", {"tab", "sep", "cr"}},
    {"MiXeD CaSe", {"mixed", "case"}},
    {"123 456", {"123", "456"}},
    {"日本語のテキスト", {"日本語のテキスト"}},
    {"中文，标点。", {"中文", "标点"}},
    {"‍👍 joiner first", {"👍", "joiner", "first"}},
    {"👍‍ dangling", {"👍", "dangling"}},
    {"🏽 alone", {"🏽", "alone"}},
    {"🏴󠁧󠁢󠁳󠁣󠁴󠁿 flag", {"🏴󠁧󠁢󠁳󠁣󠁴󠁿", "flag"}},
    {"a\u00a0b", {"a", "b"}},
    {"ß and ẞ", {"ß", "and", "ẞ"}},
    {"not bad 😀😀😀 really", {"not", "bad", "😀", "😀", "😀", "really"}},
};

}  // namespace

TEST_CASE("tokenizer matches the hand-reviewed fixture", "[tokenizer]") {
    REQUIRE(kFixture.size() == 50);
    for (const auto& [input, expected] : kFixture) {
        INFO("input: " << input);
        CHECK(texts(tokenize(input)) == expected);
        CHECK(oracle::tokenize(input) == expected);
    }
}

TEST_CASE("tokenizer agrees with the reference tokenizer on random strings", "[tokenizer][property]") {
    const std::vector<std::string> pieces = {
        "a", "B", "z", "9", " ", "\t", "!", "#", "@", "_", "'", "-", ".", ":", "/", "://", "http", "x.y",
        "é", "Ä", "Ω", "Я", "Ѐ", "字", "👍", "🏽", "‍", "️", "🇺", "🇸", "🚀", "☀", "\xff", "\xc3", "\xe2\x82",
        "\xed\xa0\x80", "\xf4\x90\x80\x80", "\xc0\xaf", "—", "€", " ", "󠁧", "@x_1", "https://q.r/s"};
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> piece(0, pieces.size() - 1);
    std::uniform_int_distribution<int> len(0, 14);
    for (int n = 0; n < 20000; ++n) {
        std::string s;
        const int k = len(rng);
        for (int j = 0; j < k; ++j) s += pieces[piece(rng)];
        INFO("input bytes: " << s);
        REQUIRE(texts(tokenize(s)) == oracle::tokenize(s));
    }
}

TEST_CASE("every produced token re-tokenizes to itself", "[tokenizer][property]") {
    const std::vector<std::string> pieces = {"Ab", "ö", "Ω", "👍", "🏽", "‍", "🇺", "🇸", "@", "x", "#", " ",
                                             "\xff", "️", "🏴", "󠁧", "'", "Ђ", "://", "q"};
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> piece(0, pieces.size() - 1);
    for (int n = 0; n < 5000; ++n) {
        std::string s;
        for (int j = 0; j < 10; ++j) s += pieces[piece(rng)];
        for (const auto& t : tokenize(s)) {
            INFO("token: " << t.text << " from " << s);
            REQUIRE_FALSE(t.text.empty());
            const auto again = tokenize(t.text);
            REQUIRE(again.size() == 1);
            REQUIRE(again.front() == t);
        }
    }
}

TEST_CASE("join_tokens separates with single spaces", "[tokenizer]") {
    CHECK(sentiscope::join_tokens(tokenize("  Not   a BAD\tthing ")) == "not a bad thing");
    CHECK(sentiscope::join_tokens({}).empty());
}
