#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyrecon {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Binary string s_1..s_n. Stored as one byte per symbol, indexed from 0
/// (so the 1-indexed s_i is `bits[i - 1]`).
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);

    /// Parses ASCII '0'/'1'. Throws InputError on any other character.
    static BitString parse(std::string_view text);
    /// Bits of `word` taken MSB-first over the low `n` bits.
    static BitString from_word(std::uint64_t word, std::size_t n);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::span<const std::uint8_t> bits() const { return bits_; }

    std::size_t weight() const;
    BitString reversed() const;
    std::string str() const;
    std::uint64_t to_word() const;

    /// s_1 = 1 and s_n = 0; the class the reconstruction algorithm targets.
    bool is_reconstruction_facing() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& os, const BitString& s);

/// Gap encoding a_0..a_d: a_i zeros between the i-th and (i+1)-th one.
class GapString {
public:
    GapString() = default;
    explicit GapString(std::vector<std::int64_t> gaps);

    std::size_t weight() const { return gaps_.size() - 1; }  // d
    std::size_t length() const;                              // n = sum + d
    std::int64_t operator[](std::size_t i) const { return gaps_[i]; }
    std::span<const std::int64_t> gaps() const { return gaps_; }

    /// g_i^j = a_i + ... + a_j, inclusive. Throws std::out_of_range.
    std::int64_t sum(std::size_t i, std::size_t j) const;

    friend bool operator==(const GapString&, const GapString&) = default;

private:
    std::vector<std::int64_t> gaps_;
};

GapString gap_encode(const BitString& s);
BitString gap_decode(const GapString& a);

/// Composition 1^ones 0^zeros.
struct Composition {
    std::uint32_t ones = 0;
    std::uint32_t zeros = 0;

    std::uint32_t length() const { return ones + zeros; }

    friend bool operator==(const Composition&, const Composition&) = default;
};

/// Orders by (ones + zeros, ones), the interchange order.
struct CompositionOrder {
    bool operator()(const Composition& a, const Composition& b) const {
        if (a.length() != b.length())
            return a.length() < b.length();
        return a.ones < b.ones;
    }
};

/// Multiset C(s) of compositions of all contiguous substrings of s.
class CompositionMultiset {
public:
    using Entries = std::map<Composition, std::uint64_t, CompositionOrder>;

    CompositionMultiset() = default;
    CompositionMultiset(std::size_t n, Entries entries);

    std::size_t n() const { return n_; }
    const Entries& entries() const { return entries_; }
    std::uint64_t multiplicity(Composition c) const;
    std::uint64_t total() const;

    /// Throws InputError if the per-length counts cannot come from a
    /// string of length n.
    void validate() const;

    friend bool operator==(const CompositionMultiset&, const CompositionMultiset&) = default;

private:
    std::size_t n_ = 0;
    Entries entries_;
};

CompositionMultiset compose(const BitString& s);

/// wt(s_1^j) != wt(s_{n+1-j}^n) for every 1 <= j <= n-1.
bool prefix_suffix_weights_distinct(const BitString& s);

namespace io {

/// "# n=<n>" header followed by "<ones> <zeros> <mult>" lines.
void write_multiset(std::ostream& os, const CompositionMultiset& m);
std::string format_multiset(const CompositionMultiset& m);
/// Throws InputError naming the offending line. Validates the invariants.
CompositionMultiset read_multiset(std::istream& is);
CompositionMultiset parse_multiset(std::string_view text);

}  // namespace io

}  // namespace polyrecon
