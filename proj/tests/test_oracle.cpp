#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>

#include "polyrecon/oracle.hpp"

using namespace polyrecon;

TEST_CASE("classes partition every string of length n") {
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto table = oracle::build_classes(n);
        std::size_t members = 0;
        std::map<std::string, std::size_t> by_key;
        table.for_each_class([&](const std::vector<BitString>& cls) {
            members += cls.size();
            const auto key = oracle::canonical_key(compose(cls.front()));
            for (const auto& t : cls)
                CHECK(oracle::canonical_key(compose(t)) == key);
            CHECK(std::is_sorted(cls.begin(), cls.end()));
            ++by_key[key];
        });
        CHECK(members == (std::size_t{1} << n));
        CHECK(by_key.size() == table.class_count());
        for (const auto& [key, count] : by_key)
            CHECK(count == 1);
    }
}

TEST_CASE("a string and its reversal share a class") {
    const auto table = oracle::build_classes(9);
    for (std::uint64_t w = 0; w < 512; ++w) {
        const auto s = BitString::from_word(w, 9);
        const auto& cls = table.class_of(s);
        CHECK(std::find(cls.begin(), cls.end(), s.reversed()) != cls.end());
    }
}

TEST_CASE("oracle reconstruction examples") {
    const std::vector<BitString> want{BitString::parse("1010")};
    CHECK(oracle::oracle_reconstruct(compose(BitString::parse("1010"))) == want);
    CHECK(oracle::oracle_reconstruct(compose(BitString::parse("0101"))) == want);
}

TEST_CASE("malformed or unrealised multisets are errors") {
    // Wrong total count for n = 2.
    CompositionMultiset bad(2, {{{1, 0}, 1}, {{1, 1}, 1}});
    CHECK_THROWS_AS(oracle::oracle_reconstruct(bad), InputError);
    // Per-length counts add up, but three ones leave no room for a 00 pair.
    CompositionMultiset fake(3, {{{1, 0}, 3}, {{0, 2}, 2}, {{2, 1}, 1}});
    CHECK_THROWS_AS(oracle::oracle_reconstruct(fake), InputError);
}

TEST_CASE("the size guard") {
    CHECK(oracle::max_n() >= 14);
    CHECK_THROWS_AS(oracle::build_classes(oracle::max_n() + 1), std::invalid_argument);
}

TEST_CASE("canonical key is the interchange text") {
    const auto m = compose(BitString::parse("1001"));
    CHECK(oracle::canonical_key(m) == io::format_multiset(m));
}
