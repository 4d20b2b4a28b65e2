#include "polyrecon/strings.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace polyrecon {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1)
            throw InputError("bit value out of range");
}

BitString BitString::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw InputError("binary string contains '" + std::string(1, c) + "'");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitString(std::move(bits));
}

BitString BitString::from_word(std::uint64_t word, std::size_t n) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i)
        bits[i] = static_cast<std::uint8_t>((word >> (n - 1 - i)) & 1U);
    return BitString(std::move(bits));
}

std::size_t BitString::weight() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

BitString BitString::reversed() const {
    return BitString(std::vector<std::uint8_t>(bits_.rbegin(), bits_.rend()));
}

std::string BitString::str() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        out[i] = static_cast<char>('0' + bits_[i]);
    return out;
}

std::uint64_t BitString::to_word() const {
    if (bits_.size() > 64)
        throw std::length_error("BitString longer than 64 bits");
    std::uint64_t w = 0;
    for (auto b : bits_)
        w = (w << 1) | b;
    return w;
}

bool BitString::is_reconstruction_facing() const {
    return bits_.size() >= 2 && bits_.front() == 1 && bits_.back() == 0;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) { return os << s.str(); }

GapString::GapString(std::vector<std::int64_t> gaps) : gaps_(std::move(gaps)) {
    if (gaps_.empty())
        throw InputError("gap string must have at least one entry");
    for (auto g : gaps_)
        if (g < 0)
            throw InputError("gap string entries must be non-negative");
}

std::size_t GapString::length() const {
    auto zeros = std::accumulate(gaps_.begin(), gaps_.end(), std::int64_t{0});
    return static_cast<std::size_t>(zeros) + weight();
}

std::int64_t GapString::sum(std::size_t i, std::size_t j) const {
    if (i > j || j >= gaps_.size())
        throw std::out_of_range("gap sum index out of range");
    return std::accumulate(gaps_.begin() + static_cast<std::ptrdiff_t>(i),
                           gaps_.begin() + static_cast<std::ptrdiff_t>(j) + 1, std::int64_t{0});
}

GapString gap_encode(const BitString& s) {
    if (s.weight() == 0)
        throw InputError("gap encoding of an all-zero string");
    std::vector<std::int64_t> gaps{0};
    for (auto b : s.bits()) {
        if (b == 1)
            gaps.push_back(0);
        else
            ++gaps.back();
    }
    return GapString(std::move(gaps));
}

BitString gap_decode(const GapString& a) {
    std::vector<std::uint8_t> bits;
    bits.reserve(a.length());
    for (std::size_t i = 0; i <= a.weight(); ++i) {
        if (i > 0)
            bits.push_back(1);
        bits.insert(bits.end(), static_cast<std::size_t>(a[i]), 0);
    }
    return BitString(std::move(bits));
}

CompositionMultiset::CompositionMultiset(std::size_t n, Entries entries)
    : n_(n), entries_(std::move(entries)) {
    std::erase_if(entries_, [](const auto& kv) { return kv.second == 0; });
}

std::uint64_t CompositionMultiset::multiplicity(Composition c) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? 0 : it->second;
}

std::uint64_t CompositionMultiset::total() const {
    std::uint64_t t = 0;
    for (const auto& [c, m] : entries_)
        t += m;
    return t;
}

void CompositionMultiset::validate() const {
    std::vector<std::uint64_t> per_length(n_ + 1, 0);
    for (const auto& [c, m] : entries_) {
        if (c.length() == 0 || c.length() > n_)
            throw InputError("composition of length " + std::to_string(c.length()) +
                             " in a multiset for n=" + std::to_string(n_));
        per_length[c.length()] += m;
    }
    for (std::size_t len = 1; len <= n_; ++len) {
        if (per_length[len] != n_ - len + 1)
            throw InputError("length-" + std::to_string(len) + " compositions sum to " +
                             std::to_string(per_length[len]) + ", expected " +
                             std::to_string(n_ - len + 1));
    }
}

CompositionMultiset compose(const BitString& s) {
    const std::size_t n = s.size();
    // counts[len][ones]; the dense table is Theta(n^2) like the output.
    std::vector<std::vector<std::uint64_t>> counts(n + 1);
    for (std::size_t len = 1; len <= n; ++len)
        counts[len].assign(len + 1, 0);

    std::vector<std::uint32_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + s[i];

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            ++counts[j - i][prefix[j] - prefix[i]];

    CompositionMultiset::Entries entries;
    for (std::size_t len = 1; len <= n; ++len)
        for (std::size_t ones = 0; ones <= len; ++ones)
            if (counts[len][ones] != 0)
                entries.emplace_hint(entries.end(),
                                     Composition{static_cast<std::uint32_t>(ones),
                                                 static_cast<std::uint32_t>(len - ones)},
                                     counts[len][ones]);
    return CompositionMultiset(n, std::move(entries));
}

bool prefix_suffix_weights_distinct(const BitString& s) {
    const std::size_t n = s.size();
    std::size_t pre = 0;
    std::size_t suf = 0;
    for (std::size_t j = 1; j + 1 <= n; ++j) {
        pre += s[j - 1];
        suf += s[n - j];
        if (pre == suf)
            return false;
    }
    return true;
}

namespace io {

void write_multiset(std::ostream& os, const CompositionMultiset& m) {
    os << "# n=" << m.n() << '\n';
    for (const auto& [c, mult] : m.entries())
        os << c.ones << ' ' << c.zeros << ' ' << mult << '\n';
}

std::string format_multiset(const CompositionMultiset& m) {
    std::ostringstream os;
    write_multiset(os, m);
    return os.str();
}

namespace {

template <typename T>
bool parse_number(std::string_view token, T& out) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

CompositionMultiset read_multiset(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        throw InputError("line " + std::to_string(lineno) + ": " + what);
    };

    std::size_t n = 0;
    bool have_header = false;
    CompositionMultiset::Entries entries;
    while (std::getline(is, line)) {
        ++lineno;
        auto tokens = split_ws(line);
        if (tokens.empty())
            continue;
        if (!have_header) {
            std::string_view head = line;
            while (!head.empty() && (head.back() == '\r' || head.back() == ' '))
                head.remove_suffix(1);
            if (!head.starts_with("# n=") || !parse_number(head.substr(4), n))
                fail("expected header '# n=<n>'");
            have_header = true;
            continue;
        }
        if (tokens.size() != 3)
            fail("expected '<ones> <zeros> <multiplicity>'");
        Composition c;
        std::uint64_t mult = 0;
        if (!parse_number(tokens[0], c.ones) || !parse_number(tokens[1], c.zeros) ||
            !parse_number(tokens[2], mult))
            fail("non-numeric field");
        if (mult == 0)
            fail("zero multiplicity");
        if (!entries.emplace(c, mult).second)
            fail("duplicate composition " + std::to_string(c.ones) + " " +
                 std::to_string(c.zeros));
    }
    if (!have_header)
        throw InputError("empty multiset file");
    CompositionMultiset m(n, std::move(entries));
    m.validate();
    return m;
}

CompositionMultiset parse_multiset(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read_multiset(is);
}

}  // namespace io

}  // namespace polyrecon
