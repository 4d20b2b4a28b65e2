#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "polyrecon/strings.hpp"

using namespace polyrecon;

namespace {

// Every substring counted one at a time.
CompositionMultiset naive_compose(const BitString& s) {
    CompositionMultiset::Entries e;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i; j < s.size(); ++j) {
            std::uint32_t ones = 0;
            for (std::size_t k = i; k <= j; ++k)
                ones += s[k];
            ++e[Composition{ones, static_cast<std::uint32_t>(j - i + 1) - ones}];
        }
    return CompositionMultiset(s.size(), e);
}

BitString random_string(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits)
        b = rng() & 1U;
    return BitString(bits);
}

}  // namespace

TEST_CASE("parse rejects anything but 0 and 1") {
    CHECK(BitString::parse("1010").str() == "1010");
    CHECK_THROWS_AS(BitString::parse("10a1"), InputError);
    CHECK(BitString::from_word(0b1001, 4).str() == "1001");
    CHECK(BitString::parse("0110").to_word() == 0b0110);
}

TEST_CASE("gap encoding examples") {
    CHECK(gap_encode(BitString::parse("10011010")) == GapString({0, 2, 0, 1, 1}));
    CHECK(gap_encode(BitString::parse("1010")) == GapString({0, 1, 1}));
    CHECK(gap_encode(BitString::parse("10")) == GapString({0, 1}));
    CHECK(gap_decode(GapString({0, 2, 0, 1, 1})).str() == "10011010");
    CHECK(gap_decode(GapString({0, 1})).str() == "10");
    CHECK(gap_decode(GapString({1, 0})).str() == "01");
    CHECK(gap_decode(GapString({1, 1})).str() == "010");
    CHECK_THROWS(gap_encode(BitString::parse("000")));
}

TEST_CASE("partial gap sums") {
    const auto a = gap_encode(BitString::parse("10011010"));
    CHECK(a.sum(1, 3) == 3);
    for (std::size_t i = 0; i <= a.weight(); ++i)
        CHECK(a.sum(i, i) == a[i]);
    CHECK(gap_encode(BitString::parse("1010")).sum(0, 2) == 2);
    CHECK_THROWS_AS(a.sum(0, 9), std::out_of_range);
}

TEST_CASE("gap encoding is a bijection onto length and weight") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        auto s = random_string(1 + rng() % 40, rng);
        if (s.weight() == 0)
            continue;
        const auto a = gap_encode(s);
        CHECK(a.weight() == s.weight());
        CHECK(a.length() == s.size());
        CHECK(gap_decode(a) == s);
    }
}

TEST_CASE("composition multiset examples") {
    using E = CompositionMultiset::Entries;
    CHECK(compose(BitString::parse("1001")) ==
          CompositionMultiset(4, E{{{1, 0}, 2}, {{0, 1}, 2}, {{1, 1}, 2}, {{0, 2}, 1}, {{1, 2}, 2}, {{2, 2}, 1}}));
    CHECK(compose(BitString::parse("1")) == CompositionMultiset(1, E{{{1, 0}, 1}}));
    CHECK(compose(BitString::parse("111")) == CompositionMultiset(3, E{{{1, 0}, 3}, {{2, 0}, 2}, {{3, 0}, 1}}));
}

TEST_CASE("compose matches substring enumeration and is reversal invariant") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_string(1 + rng() % 30, rng);
        const auto m = compose(s);
        CHECK(m == naive_compose(s));
        CHECK(m == compose(s.reversed()));
        CHECK(m.total() == s.size() * (s.size() + 1) / 2);
        CHECK_NOTHROW(m.validate());
    }
}

TEST_CASE("prefix and suffix weights") {
    CHECK(prefix_suffix_weights_distinct(BitString::parse("10")));
    CHECK_FALSE(prefix_suffix_weights_distinct(BitString::parse("1010")));
    CHECK(prefix_suffix_weights_distinct(BitString::parse("110100")));
}

TEST_CASE("multiset text round trip") {
    const auto m = compose(BitString::parse("1001"));
    const auto text = io::format_multiset(m);
    CHECK(text == "# n=4\n0 1 2\n1 0 2\n0 2 1\n1 1 2\n1 2 2\n2 2 1\n");
    CHECK(io::parse_multiset(text) == m);
}

TEST_CASE("malformed multiset files are rejected with a line number") {
    CHECK_THROWS_AS(io::parse_multiset("1 0 2\n"), InputError);
    CHECK_THROWS_AS(io::parse_multiset("# n=2\n1 0 1\n0 1 1\n1 1 x\n"), InputError);
    // Wrong total: a length-2 string has two length-1 substrings.
    try {
        io::parse_multiset("# n=2\n1 0 1\n1 1 1\n");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("length-1") != std::string::npos);
    }
    try {
        io::parse_multiset("# n=2\n1 0 1\nbad\n");
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}
