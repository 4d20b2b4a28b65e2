#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <map>
#include <random>

#include "polyrecon/poly.hpp"

using namespace polyrecon;

namespace {

BiPoly poly(std::vector<Term> terms) { return BiPoly(std::move(terms)); }

BitString random_string(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits)
        b = rng() & 1U;
    return BitString(bits);
}

// Schoolbook product over a std::map, independent of BiPoly::operator*.
BiPoly naive_product(const BiPoly& a, const BiPoly& b) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> acc;
    for (const auto& s : a.terms())
        for (const auto& t : b.terms())
            acc[{s.xdeg + t.xdeg, s.ydeg + t.ydeg}] += s.coef * t.coef;
    std::vector<Term> out;
    for (const auto& [k, c] : acc)
        out.push_back({k.first, k.second, c});
    return BiPoly(out);
}

// Prefix monomials straight from the definition.
BiPoly naive_p(const BitString& s) {
    std::vector<Term> t{{0, 0, 1}};
    std::uint32_t w = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        w += s[j];
        t.push_back({w, static_cast<std::uint32_t>(j + 1) - w, 1});
    }
    return BiPoly(t);
}

// One monomial per substring.
BiPoly naive_s(const BitString& s) {
    std::vector<Term> t;
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::uint32_t ones = 0;
        for (std::size_t j = i; j < s.size(); ++j) {
            ones += s[j];
            t.push_back({ones, static_cast<std::uint32_t>(j - i + 1) - ones, 1});
        }
    }
    return BiPoly(t);
}

BiPoly naive_reciprocal(const BiPoly& f) {
    std::vector<Term> t;
    for (const auto& term : f.terms())
        t.push_back({f.degx() - term.xdeg, f.degy() - term.ydeg, term.coef});
    return BiPoly(t);
}

BiPoly random_poly(std::mt19937_64& rng) {
    std::vector<Term> t;
    const int count = static_cast<int>(rng() % 12);
    for (int i = 0; i < count; ++i)
        t.push_back({static_cast<std::uint32_t>(rng() % 6), static_cast<std::uint32_t>(rng() % 6),
                     static_cast<std::int64_t>(rng() % 11) - 5});
    return BiPoly(t);
}

}  // namespace

TEST_CASE("construction merges duplicates and drops zeros") {
    const auto p = poly({{1, 0, 2}, {0, 0, 1}, {1, 0, -2}, {2, 3, 4}});
    CHECK(p.size() == 2);
    CHECK(p.coefficient(0, 0) == 1);
    CHECK(p.coefficient(1, 0) == 0);
    CHECK(p.degx() == 2);
    CHECK(p.degy() == 3);
    CHECK(BiPoly().is_zero());
}

TEST_CASE("ring operations agree with a schoolbook product") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_poly(rng);
        const auto b = random_poly(rng);
        const auto c = random_poly(rng);
        CHECK(a * b == naive_product(a, b));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) - b == a);
    }
}

TEST_CASE("coefficient overflow is reported") {
    const auto big = BiPoly::constant(std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(big + BiPoly::constant(1), std::overflow_error);
    CHECK_THROWS_AS(big * BiPoly::constant(2), std::overflow_error);
}

TEST_CASE("prefix polynomial examples") {
    CHECK(p_of(BitString::parse("1001")) == poly({{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1}, {2, 2, 1}}));
    CHECK(p_of(BitString()) == BiPoly::constant(1));
    CHECK(p_of(BitString::parse("10")) == poly({{0, 0, 1}, {1, 0, 1}, {1, 1, 1}}));
}

TEST_CASE("composition polynomial examples") {
    // The length-3 substrings 100 and 001 both give x y^2.
    CHECK(s_of(BitString::parse("1001")) ==
          poly({{1, 0, 2}, {0, 1, 2}, {1, 1, 2}, {0, 2, 1}, {1, 2, 2}, {2, 2, 1}}));
    CHECK(s_of(BitString::parse("1")) == BiPoly::monomial(1, 0));
    CHECK(s_of(BitString::parse("00")) == poly({{0, 1, 2}, {0, 2, 1}}));
}

TEST_CASE("reciprocal examples") {
    const auto p1001 = p_of(BitString::parse("1001"));
    CHECK(reciprocal(p1001) == p1001);
    CHECK(reciprocal(BiPoly::constant(1)) == BiPoly::constant(1));
    CHECK(reciprocal(p_of(BitString::parse("10"))) == p_of(BitString::parse("01")));
}

TEST_CASE("reciprocal of P_s is P of the reversal") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_string(1 + rng() % 30, rng);
        CHECK(reciprocal(p_of(s)) == naive_p(s.reversed()));
        CHECK(reciprocal(p_of(s)) == naive_reciprocal(naive_p(s)));
    }
}

TEST_CASE("F examples") {
    const auto p = p_of(BitString::parse("1001"));
    CHECK(f_of(BitString::parse("1001")) == naive_product(p, p));
    CHECK(f_of(BitString::parse("1")) == poly({{0, 0, 1}, {1, 0, 2}, {2, 0, 1}}));
}

TEST_CASE("fast F agrees with the explicit product") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_string(1 + rng() % 64, rng);
        const auto p = naive_p(s);
        CHECK(f_of(s) == naive_product(p, naive_reciprocal(p)));
    }
}

TEST_CASE("P P* expands as (n+1) + S + S(1/x,1/y) around the full-string term") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_string(1 + rng() % 48, rng);
        const auto n = s.size();
        const auto sp = naive_s(s);
        const auto w = static_cast<std::uint32_t>(s.weight());
        const auto z = static_cast<std::uint32_t>(n) - w;
        // S(1/x,1/y) x^w y^z is S^* because S has the single top term x^w y^z.
        const auto expected = (BiPoly::constant(static_cast<std::int64_t>(n) + 1) + sp).shifted(w, z) +
                              naive_reciprocal(sp);
        CHECK(f_of(s) == expected);
        CHECK(s_of(s) == sp);
        CHECK(s_of(compose(s)) == sp);
    }
}

TEST_CASE("F from S and back") {
    for (const char* text : {"1001", "10", "110100"}) {
        const auto s = BitString::parse(text);
        CHECK(f_from_multiset(s_of(s), s.size()) == f_of(s));
        CHECK(s_from_f(f_of(s), s.size()) == s_of(s));
    }
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_string(1 + rng() % 80, rng);
        const auto sp = s_of(s);
        CHECK(s_from_f(f_from_multiset(sp, s.size()), s.size()) == sp);
        CHECK(multiset_of(sp, s.size()) == compose(s));
    }
}

TEST_CASE("S that no string of the stated length produces is rejected") {
    const auto sp = s_of(BitString::parse("1001"));
    CHECK_THROWS_AS(f_from_multiset(sp, 5), InputError);
    CHECK_THROWS_AS(s_from_f(f_of(BitString::parse("1001")) + BiPoly::monomial(0, 0), 4), InputError);
}

TEST_CASE("polynomial text round trip") {
    const auto f = f_of(BitString::parse("1"));
    CHECK(io::format_poly(f) == "# degx=2 degy=0\n0 0 1\n1 0 2\n2 0 1\n");
    CHECK(io::parse_poly(io::format_poly(f)) == f);
    const auto g = f_of(BitString::parse("110100"));
    CHECK(io::parse_poly(io::format_poly(g)) == g);
    CHECK_THROWS_AS(io::parse_poly("0 0 1\n"), InputError);
    CHECK_THROWS_AS(io::parse_poly("# degx=1 degy=0\n0 0 1\n1 0 z\n"), InputError);
}
