#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "polyrecon/strings.hpp"

namespace polyrecon::codes {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class Family { kSR, kP, kQ, kR, kT };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Codewords of length n <= 64 packed MSB-first (s_1 is the top bit), so
/// numeric order is lexicographic order.
using Word = std::uint64_t;

struct Codebook {
    std::size_t n = 0;
    Family family = Family::kT;
    std::vector<Word> words;  // sorted, unique

    std::size_t size() const { return words.size(); }
    bool contains(Word w) const;
    BitString word(std::size_t i) const { return BitString::from_word(words[i], n); }
};

Word reverse_word(Word w, std::size_t n);

/// Visits every word of S_R(n) once; n >= 2 (n = 2, 3 are the degenerate
/// bases {01} and {001, 011}).
void for_each_sr(std::size_t n, const std::function<void(Word)>& visit);

/// Words are collected in memory; n must be at most 40.
Codebook gen_sr(std::size_t n);
Codebook gen_p(std::size_t n);
Codebook gen_q(std::size_t n, std::size_t k);
Codebook gen_q(std::size_t n);
Codebook gen_r(std::size_t n, std::size_t k);
Codebook gen_r(std::size_t n);
Codebook gen_t(std::size_t n);
Codebook generate(Family family, std::size_t n);

/// Admissible k for the Q and R families (cores of length >= 4).
std::vector<std::size_t> q_range(std::size_t n);
std::vector<std::size_t> r_range(std::size_t n);

/// Exact |S_R(n)|, counted without enumerating.
BigInt sr_count(std::size_t n);

/// Membership predicates, checked structurally on the string.
bool is_sr(const BitString& s);
bool is_p(const BitString& s);
std::optional<std::size_t> q_index(const BitString& s);  // k with s in Q_{k,n}
std::optional<std::size_t> r_index(const BitString& s);
bool in_family(const BitString& s, Family family);

/// Random word of S_R(n), any n >= 2. Not uniform over the code.
BitString random_sr(std::size_t n, std::mt19937_64& rng);

/// How binom(i, i/2) is read for odd i in the size bound.
enum class BoundReading {
    kFloorCentral,   ///< binom(i, floor(i/2)): the number of ballot prefixes
    kEvenTermsOnly,  ///< odd-i terms dropped
};

struct SrBounds {
    BigRational lower;
    BigInt upper;
};

/// (1/2) sum_i binom(m,i) 2^{m-i} binom(i, i/2) <= |S_R(n)| <= sum_i ...,
/// m = (n-2)/2. n must be even and >= 4.
SrBounds sr_size_bounds(std::size_t n, BoundReading reading = BoundReading::kFloorCentral);

/// 4^m / (2 sqrt(pi m)) <= binom(2m, m) <= 4^m / sqrt(pi m).
struct CentralBinomialBounds {
    long double lower;
    long double upper;
};
CentralBinomialBounds central_binomial_bounds(std::size_t m);
BigInt binomial(std::size_t n, std::size_t k);

struct VerifyReport {
    std::size_t n = 0;
    std::size_t words = 0;
    bool distinct_multisets = true;
    bool backtrack_free = true;
    bool structure = true;
    std::string distinct_method;  // "direct" or "reconstruction"
    std::size_t backtracks = 0;
    std::size_t pauses = 0;
    std::size_t type2_pauses = 0;
    std::vector<std::string> violations;

    bool ok() const { return distinct_multisets && backtrack_free && structure; }
};

/// Distinct multisets, decoding of every word back to itself with the
/// type-1-only decoder, and the family's structural predicate (`family` =
/// nullopt skips it). The decoder is deterministic, so past n = 16 decoding
/// every word doubles as the distinctness proof. Strings outside the code may
/// still share a codeword's multiset. Runs on `threads` workers (0 = all).
VerifyReport verify_codebook(std::size_t n, const std::vector<Word>& words,
                             std::optional<Family> family, unsigned threads = 0);
VerifyReport verify_codebook(const Codebook& cb, unsigned threads = 0);

namespace io {

/// One codeword per line, ASCII 0/1.
void write_codebook(std::ostream& os, const Codebook& cb);
/// Throws InputError naming the offending line.
std::vector<Word> read_codebook(std::istream& is, std::size_t n);

}  // namespace io

}  // namespace polyrecon::codes
