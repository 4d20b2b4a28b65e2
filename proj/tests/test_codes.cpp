#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "polyrecon/codes.hpp"
#include "polyrecon/reconstruct.hpp"

using namespace polyrecon;
using namespace polyrecon::codes;

namespace {

// S_R(n) straight from the definition, by scanning all 2^n strings.
std::set<Word> brute_sr(std::size_t n) {
    std::set<Word> out;
    for (Word w = 0; w < (Word{1} << n); ++w) {
        const auto s = BitString::from_word(w, n);
        if (s[0] != 0 || s[n - 1] != 1)
            continue;
        // I = positions i in [2, n/2] (1-indexed) where s_i != s_{n+1-i};
        // for odd n the middle symbol is free.
        int balance = 0;
        bool ok = true;
        for (std::size_t i = 2; i <= n / 2 && ok; ++i) {
            if (s[i - 1] == s[n - i])
                continue;
            balance += s[i - 1] == 0 ? 1 : -1;
            ok = balance >= 0;
        }
        if (ok)
            out.insert(w);
    }
    return out;
}

Word parse_word(const char* text) { return BitString::parse(text).to_word(); }

}  // namespace

TEST_CASE("S_R generation matches the definition") {
    for (std::size_t n = 4; n <= 16; ++n) {
        const auto cb = gen_sr(n);
        const auto want = brute_sr(n);
        CHECK(std::set<Word>(cb.words.begin(), cb.words.end()) == want);
        CHECK(cb.size() == want.size());
        CHECK(sr_count(n) == cb.size());
        for (auto w : cb.words)
            CHECK(is_sr(BitString::from_word(w, n)));
    }
    CHECK(sr_count(2) == 1);
    CHECK(sr_count(3) == 2);
}

TEST_CASE("S_R words have distinct prefix and suffix weights") {
    for (std::size_t n : {6, 9, 10, 13}) {
        for (auto w : gen_sr(n).words)
            CHECK(prefix_suffix_weights_distinct(BitString::from_word(w, n)));
    }
}

TEST_CASE("P, Q and R are built around S_R cores") {
    const std::size_t n = 12;
    const auto p = gen_p(n);
    for (auto w : p.words) {
        const auto s = BitString::from_word(w, n);
        CHECK(is_p(s));
        CHECK(s.is_reconstruction_facing());
        CHECK(is_sr(s.reversed()));
    }
    for (auto k : q_range(n)) {
        for (auto w : gen_q(n, k).words) {
            const auto s = BitString::from_word(w, n);
            CHECK(q_index(s) == k);
            CHECK(s.is_reconstruction_facing());
        }
        CHECK(gen_q(n, k).size() == sr_count(n - 2 * k));
    }
    for (auto k : r_range(n)) {
        for (auto w : gen_r(n, k).words)
            CHECK(r_index(BitString::from_word(w, n)) == k);
        CHECK(gen_r(n, k).size() == sr_count(n - 2 * k - 1));
    }
    CHECK(q_range(12) == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(r_range(12) == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("membership examples") {
    // S_R(4) = {0001, 0011, 0111}: position 2 is mirrored or opens I with a 0.
    CHECK(is_sr(BitString::parse("0011")));
    CHECK_FALSE(is_sr(BitString::parse("0101")));
    CHECK(q_index(BitString::parse("100110")) == 1);
    CHECK_FALSE(q_index(BitString::parse("101010")).has_value());
    CHECK(r_index(BitString::parse("1001100")) == 1);
    CHECK(r_index(BitString::parse("10101100")) == 1);
    CHECK_FALSE(r_index(BitString::parse("11101100")).has_value());
    CHECK_FALSE(in_family(BitString::parse("1010"), Family::kT));
}

TEST_CASE("T is the union of its parts") {
    for (std::size_t n = 8; n <= 16; ++n) {
        const auto t = gen_t(n);
        std::set<Word> parts;
        for (const auto& cb : {gen_p(n), gen_q(n), gen_r(n)})
            parts.insert(cb.words.begin(), cb.words.end());
        CHECK(std::set<Word>(t.words.begin(), t.words.end()) == parts);
        for (auto w : t.words)
            CHECK(in_family(BitString::from_word(w, n), Family::kT));
        if (n % 2 == 0)
            CHECK(BigInt(t.size()) >= sr_count(n) + sr_count(n - 2));
    }
}

TEST_CASE("size bounds under both readings") {
    for (std::size_t n = 4; n <= 30; n += 2) {
        const auto count = sr_count(n);
        const auto floor = sr_size_bounds(n, BoundReading::kFloorCentral);
        CHECK(BigRational(count) >= floor.lower);
        CHECK(count <= floor.upper);
        // Ballot prefixes are counted exactly by binom(i, floor(i/2)).
        CHECK(count == floor.upper);
    }
    const auto even = sr_size_bounds(6, BoundReading::kEvenTermsOnly);
    CHECK(even.upper == 6);
    CHECK(sr_count(6) == 10);
    CHECK_THROWS_AS(sr_size_bounds(7), std::invalid_argument);
}

TEST_CASE("central binomial bounds") {
    for (std::size_t m = 1; m <= 30; ++m) {
        const auto b = central_binomial_bounds(m);
        const auto c = binomial(2 * m, m).convert_to<long double>();
        CHECK(b.lower <= c);
        CHECK(c <= b.upper);
    }
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("random S_R words are members") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng() % 300;
        CHECK(is_sr(random_sr(n, rng)));
    }
}

TEST_CASE("verify_codebook examples") {
    const auto report = verify_codebook(gen_t(12));
    CHECK(report.ok());
    CHECK(report.backtracks == 0);
    CHECK(report.type2_pauses == 0);
    CHECK(report.distinct_method == "direct");
    CHECK(verify_codebook(gen_sr(10)).ok());

    std::vector<Word> both{parse_word("110100"), reverse_word(parse_word("110100"), 6)};
    std::sort(both.begin(), both.end());
    const auto dup = verify_codebook(6, both, std::nullopt);
    CHECK_FALSE(dup.distinct_multisets);
    CHECK_FALSE(dup.ok());
}

TEST_CASE("a codeword may share its multiset with a string outside the code") {
    // 10010110 is in Q_{1,8}; 10110010 is in none of P, Q, R.
    const auto word = BitString::parse("10010110");
    const auto other = BitString::parse("10110010");
    CHECK(q_index(word) == 1);
    CHECK_FALSE(in_family(other, Family::kT));
    CHECK(compose(word) == compose(other));
    CHECK(reconstruct(f_of(word)).strings() == std::vector<BitString>{word, other});
    ReconOptions decoder;
    decoder.type1_only = true;
    const auto rep = reconstruct(f_of(word), decoder);
    CHECK(rep.strings() == std::vector<BitString>{word});
    CHECK(rep.total_backtracks == 0);
    CHECK(verify_codebook(gen_t(8)).ok());
}

TEST_CASE("verify_codebook past the direct range") {
    const auto t = gen_t(18);
    const auto report = verify_codebook(t);
    CHECK(report.distinct_method == "reconstruction");
    CHECK(report.ok());

    auto words = t.words;
    words.push_back(reverse_word(words.front(), 18));
    std::sort(words.begin(), words.end());
    CHECK_FALSE(verify_codebook(18, words, std::nullopt).distinct_multisets);
}

TEST_CASE("verify_codebook flags structure and backtracking") {
    // 1010 decodes uniquely but belongs to none of P, Q, R.
    const auto outside = verify_codebook(4, {parse_word("1010")}, Family::kT);
    CHECK_FALSE(outside.structure);
    CHECK(outside.backtrack_free);
    CHECK_FALSE(outside.violations.empty());
    // 0110 cannot be oriented to start with 1 and end with 0.
    CHECK_FALSE(verify_codebook(4, {parse_word("0110")}, std::nullopt).backtrack_free);
}

TEST_CASE("codebook text round trip") {
    const auto cb = gen_t(10);
    std::stringstream ss;
    codes::io::write_codebook(ss, cb);
    CHECK(codes::io::read_codebook(ss, 10) == cb.words);
    std::istringstream bad("0101\n01a1\n");
    CHECK_THROWS_AS(codes::io::read_codebook(bad, 4), InputError);
    std::istringstream short_line("0101\n011\n");
    CHECK_THROWS_AS(codes::io::read_codebook(short_line, 4), InputError);
}

TEST_CASE("family names") {
    for (auto f : {Family::kSR, Family::kP, Family::kQ, Family::kR, Family::kT})
        CHECK(parse_family(family_name(f)) == f);
    CHECK_FALSE(parse_family("x").has_value());
}
