#include "polyrecon/codes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "polyrecon/poly.hpp"
#include "polyrecon/reconstruct.hpp"

namespace polyrecon::codes {

namespace {

constexpr std::size_t kMaxWordLength = 40;

Word ones(std::size_t k) { return k == 0 ? 0 : (Word{1} << k) - 1; }

void require_length(std::size_t n) {
    if (n > kMaxWordLength)
        throw std::invalid_argument("in-memory codebooks are limited to n <= " +
                                    std::to_string(kMaxWordLength));
}

Codebook finish(std::size_t n, Family family, std::vector<Word> words) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return Codebook{n, family, std::move(words)};
}

// Positions 2..n/2 of an even-length word, with the mirror filled in.
void sr_even(std::size_t n, std::size_t pos, std::int64_t balance, Word word,
             const std::function<void(Word)>& visit) {
    if (pos > n / 2) {
        visit(word);
        return;
    }
    const Word here = Word{1} << (n - pos);
    const Word mirror = Word{1} << (pos - 1);
    // Off I: s_pos = s_{n+1-pos}.
    sr_even(n, pos + 1, balance, word, visit);
    sr_even(n, pos + 1, balance, word | here | mirror, visit);
    // On I: the I-restricted first half keeps #0 >= #1 on every prefix.
    sr_even(n, pos + 1, balance + 1, word | mirror, visit);
    if (balance > 0)
        sr_even(n, pos + 1, balance - 1, word | here, visit);
}

bool sr_even_check(const BitString& s) {
    const std::size_t n = s.size();
    if (s[0] != 0 || s[n - 1] != 1)
        return false;
    std::int64_t balance = 0;
    for (std::size_t i = 1; i < n / 2; ++i) {
        if (s[i] == s[n - 1 - i])
            continue;
        balance += s[i] == 0 ? 1 : -1;
        if (balance < 0)
            return false;
    }
    return true;
}

BitString slice(const BitString& s, std::size_t from, std::size_t len) {
    auto bits = s.bits().subspan(from, len);
    return BitString(std::vector<std::uint8_t>(bits.begin(), bits.end()));
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
    case Family::kSR: return "sr";
    case Family::kP: return "p";
    case Family::kQ: return "q";
    case Family::kR: return "r";
    case Family::kT: return "t";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view name) {
    for (auto f : {Family::kSR, Family::kP, Family::kQ, Family::kR, Family::kT})
        if (family_name(f) == name)
            return f;
    return std::nullopt;
}

bool Codebook::contains(Word w) const { return std::binary_search(words.begin(), words.end(), w); }

Word reverse_word(Word w, std::size_t n) {
    Word r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        r = (r << 1) | (w & 1U);
        w >>= 1;
    }
    return r;
}

void for_each_sr(std::size_t n, const std::function<void(Word)>& visit) {
    if (n < 2)
        throw std::invalid_argument("S_R(n) needs n >= 2");
    require_length(n);
    if (n % 2 == 0) {
        sr_even(n, 2, 0, Word{1}, visit);
        return;
    }
    const std::size_t half = (n - 1) / 2;
    for_each_sr(n - 1, [&](Word w) {
        const Word head = (w >> half) << (half + 1);
        const Word tail = w & ones(half);
        visit(head | tail);
        visit(head | (Word{1} << half) | tail);
    });
}

Codebook gen_sr(std::size_t n) {
    if (n < 4)
        throw std::invalid_argument("gen_sr needs n >= 4");
    std::vector<Word> words;
    for_each_sr(n, [&](Word w) { words.push_back(w); });
    return finish(n, Family::kSR, std::move(words));
}

Codebook gen_p(std::size_t n) {
    if (n < 4)
        throw std::invalid_argument("gen_p needs n >= 4");
    std::vector<Word> words;
    for_each_sr(n, [&](Word w) { words.push_back(reverse_word(w, n)); });
    return finish(n, Family::kP, std::move(words));
}

std::vector<std::size_t> q_range(std::size_t n) {
    std::vector<std::size_t> ks;
    for (std::size_t k = 1; n >= 2 * k + 4; ++k)
        ks.push_back(k);
    return ks;
}

std::vector<std::size_t> r_range(std::size_t n) {
    std::vector<std::size_t> ks;
    for (std::size_t k = 1; n >= 2 * k + 5; ++k)
        ks.push_back(k);
    return ks;
}

Codebook gen_q(std::size_t n, std::size_t k) {
    require_length(n);
    std::vector<Word> words;
    if (k >= 1 && n >= 2 * k + 4) {
        // 1^k . w . 1^{k-1} 0 with w in S_R(n - 2k).
        const Word prefix = ones(k) << (n - k);
        const Word suffix = ones(k - 1) << 1;
        for_each_sr(n - 2 * k, [&](Word w) { words.push_back(prefix | (w << k) | suffix); });
    }
    return finish(n, Family::kQ, std::move(words));
}

Codebook gen_q(std::size_t n) {
    std::vector<Word> words;
    for (auto k : q_range(n)) {
        auto part = gen_q(n, k);
        words.insert(words.end(), part.words.begin(), part.words.end());
    }
    return finish(n, Family::kQ, std::move(words));
}

Codebook gen_r(std::size_t n, std::size_t k) {
    require_length(n);
    std::vector<Word> words;
    if (k >= 1 && n >= 2 * k + 5) {
        // 1^k . w . 1^{k-1} 00 with w in S_R(n - 2k - 1).
        const Word prefix = ones(k) << (n - k);
        const Word suffix = ones(k - 1) << 2;
        for_each_sr(n - 2 * k - 1, [&](Word w) { words.push_back(prefix | (w << (k + 1)) | suffix); });
    }
    return finish(n, Family::kR, std::move(words));
}

Codebook gen_r(std::size_t n) {
    std::vector<Word> words;
    for (auto k : r_range(n)) {
        auto part = gen_r(n, k);
        words.insert(words.end(), part.words.begin(), part.words.end());
    }
    return finish(n, Family::kR, std::move(words));
}

Codebook gen_t(std::size_t n) {
    if (n < 8)
        throw std::invalid_argument("gen_t needs n >= 8");
    std::vector<Word> words = gen_p(n).words;
    for (const auto& part : {gen_q(n), gen_r(n)})
        words.insert(words.end(), part.words.begin(), part.words.end());
    return finish(n, Family::kT, std::move(words));
}

Codebook generate(Family family, std::size_t n) {
    switch (family) {
    case Family::kSR: return gen_sr(n);
    case Family::kP: return gen_p(n);
    case Family::kQ: return gen_q(n);
    case Family::kR: return gen_r(n);
    case Family::kT: return gen_t(n);
    }
    throw std::invalid_argument("unknown family");
}

BigInt sr_count(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("S_R(n) needs n >= 2");
    if (n % 2 == 1)
        return 2 * sr_count(n - 1);
    // Walk positions 2..n/2 tracking the #0 - #1 balance of the I-restricted prefix.
    const std::size_t m = n / 2 - 1;
    std::vector<BigInt> ways(m + 2, 0);
    ways[0] = 1;
    for (std::size_t step = 0; step < m; ++step) {
        std::vector<BigInt> next(m + 2, 0);
        for (std::size_t b = 0; b <= step; ++b) {
            if (ways[b] == 0)
                continue;
            next[b] += 2 * ways[b];
            next[b + 1] += ways[b];
            if (b > 0)
                next[b - 1] += ways[b];
        }
        ways = std::move(next);
    }
    BigInt total = 0;
    for (const auto& w : ways)
        total += w;
    return total;
}

bool is_sr(const BitString& s) {
    const std::size_t n = s.size();
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return sr_even_check(s);
    const std::size_t half = (n - 1) / 2;
    std::vector<std::uint8_t> bits(s.bits().begin(), s.bits().end());
    bits.erase(bits.begin() + static_cast<std::ptrdiff_t>(half));
    return sr_even_check(BitString(std::move(bits)));
}

bool is_p(const BitString& s) { return is_sr(s.reversed()); }

std::optional<std::size_t> q_index(const BitString& s) {
    const std::size_t n = s.size();
    for (auto k : q_range(n)) {
        bool frame = s[k] == 0 && s[n - 1] == 0;
        for (std::size_t i = 0; frame && i < k; ++i)
            frame = s[i] == 1 && s[n - 1 - k + i] == 1;
        if (frame && is_sr(slice(s, k, n - 2 * k)))
            return k;
    }
    return std::nullopt;
}

std::optional<std::size_t> r_index(const BitString& s) {
    const std::size_t n = s.size();
    for (auto k : r_range(n)) {
        bool frame = s[k] == 0 && s[n - 1] == 0 && s[n - 2] == 0;
        for (std::size_t i = 0; frame && i < k; ++i)
            frame = s[i] == 1 && s[n - 2 - k + i] == 1;
        if (frame && is_sr(slice(s, k, n - 2 * k - 1)))
            return k;
    }
    return std::nullopt;
}

bool in_family(const BitString& s, Family family) {
    switch (family) {
    case Family::kSR: return is_sr(s);
    case Family::kP: return is_p(s);
    case Family::kQ: return q_index(s).has_value();
    case Family::kR: return r_index(s).has_value();
    case Family::kT: return is_p(s) || q_index(s) || r_index(s);
    }
    return false;
}

BitString random_sr(std::size_t n, std::mt19937_64& rng) {
    if (n < 2)
        throw std::invalid_argument("S_R(n) needs n >= 2");
    std::bernoulli_distribution coin(0.5);
    const std::size_t even = n - n % 2;
    std::vector<std::uint8_t> bits(even, 0);
    bits[even - 1] = 1;
    std::int64_t balance = 0;
    for (std::size_t i = 1; i < even / 2; ++i) {
        const bool in_i = coin(rng);
        std::uint8_t b = coin(rng) ? 1 : 0;
        if (in_i) {
            if (balance == 0)
                b = 0;
            balance += b == 0 ? 1 : -1;
            bits[i] = b;
            bits[even - 1 - i] = static_cast<std::uint8_t>(1 - b);
        } else {
            bits[i] = bits[even - 1 - i] = b;
        }
    }
    if (n % 2 == 1)
        bits.insert(bits.begin() + static_cast<std::ptrdiff_t>(even / 2), coin(rng) ? 1 : 0);
    return BitString(std::move(bits));
}

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    BigInt r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

SrBounds sr_size_bounds(std::size_t n, BoundReading reading) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("size bounds are stated for even n >= 4");
    const std::size_t m = (n - 2) / 2;
    BigInt upper = 0;
    for (std::size_t i = 0; i <= m; ++i) {
        if (reading == BoundReading::kEvenTermsOnly && i % 2 == 1)
            continue;
        upper += binomial(m, i) * (BigInt(1) << (m - i)) * binomial(i, i / 2);
    }
    return SrBounds{BigRational(upper, 2), upper};
}

CentralBinomialBounds central_binomial_bounds(std::size_t m) {
    if (m == 0)
        throw std::invalid_argument("central binomial bounds need m >= 1");
    const long double four_m = std::pow(4.0L, static_cast<long double>(m));
    const long double root = std::sqrt(std::numbers::pi_v<long double> * static_cast<long double>(m));
    return {four_m / (2 * root), four_m / root};
}

VerifyReport verify_codebook(std::size_t n, const std::vector<Word>& words, std::optional<Family> family,
                             unsigned threads) {
    constexpr std::size_t kMaxViolations = 20;
    VerifyReport report;
    report.n = n;
    report.words = words.size();
    report.distinct_method = n <= 16 ? "direct" : "reconstruction";

    auto note = [&](std::vector<std::string>& sink, std::string what) {
        if (sink.size() < kMaxViolations)
            sink.push_back(std::move(what));
    };

    // Decoding normalises each word to its s_1 = 1, s_n = 0 orientation.
    std::vector<Word> normalised(words.size());
    std::vector<bool> decodable(words.size(), true);
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Word w = words[i];
        const bool first = (w >> (n - 1)) & 1U;
        const bool last = w & 1U;
        if (first && !last)
            normalised[i] = w;
        else if (!first && last)
            normalised[i] = reverse_word(w, n);
        else
            decodable[i] = false;
    }

    if (n <= 16) {
        std::unordered_map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < words.size(); ++i) {
            auto key = polyrecon::io::format_multiset(compose(BitString::from_word(words[i], n)));
            auto [it, fresh] = seen.emplace(std::move(key), i);
            if (!fresh) {
                report.distinct_multisets = false;
                note(report.violations, "shared multiset: " + BitString::from_word(words[it->second], n).str() +
                                            " " + BitString::from_word(words[i], n).str());
            }
        }
    } else {
        std::unordered_map<Word, std::size_t> seen;
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (!decodable[i])
                continue;
            auto [it, fresh] = seen.emplace(normalised[i], i);
            if (!fresh) {
                report.distinct_multisets = false;
                note(report.violations, "word and reversal both present: " +
                                            BitString::from_word(words[i], n).str());
            }
        }
    }

    struct Partial {
        std::size_t backtracks = 0;
        std::size_t pauses = 0;
        std::size_t type2 = 0;
        bool distinct = true;
        bool backtrack_free = true;
        bool structure = true;
        std::vector<std::string> violations;
    };
    if (threads == 0)
        threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, words.size())));
    std::vector<Partial> parts(threads);

    auto work = [&](unsigned t) {
        auto& part = parts[t];
        const std::size_t lo = words.size() * t / threads;
        const std::size_t hi = words.size() * (t + 1) / threads;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto word = BitString::from_word(words[i], n);
            if (family && !in_family(word, *family)) {
                part.structure = false;
                note(part.violations, "not in family " + std::string(family_name(*family)) + ": " + word.str());
            }
            if (!decodable[i]) {
                part.backtrack_free = false;
                if (n > 16)
                    part.distinct = false;
                note(part.violations, "cannot be oriented to start with 1 and end with 0: " + word.str());
                continue;
            }
            const auto target = BitString::from_word(normalised[i], n);
            const auto f = f_of(target);
            // The codebook decoder takes the type-1 pair at every pause.
            ReconOptions decoder;
            decoder.type1_only = true;
            const auto rep = reconstruct(f, decoder);
            part.backtracks += rep.total_backtracks;
            part.pauses += rep.results.empty() ? 0 : rep.results.front().pause_steps.size();
            for (const auto& p : pause_profile(target))
                if (p.type != PauseType::kType1)
                    ++part.type2;
            const bool singleton = rep.results.size() == 1 && rep.results.front().string == target;
            if (!singleton) {
                if (n > 16)
                    part.distinct = false;
                part.backtrack_free = false;
                note(part.violations, "decodes to " + std::to_string(rep.results.size()) + " strings: " +
                                          word.str());
            } else if (rep.total_backtracks != 0) {
                part.backtrack_free = false;
                note(part.violations, "needed " + std::to_string(rep.total_backtracks) + " backtracks: " + word.str());
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
    }
    for (auto& part : parts) {
        report.backtracks += part.backtracks;
        report.pauses += part.pauses;
        report.type2_pauses += part.type2;
        report.distinct_multisets = report.distinct_multisets && part.distinct;
        report.backtrack_free = report.backtrack_free && part.backtrack_free;
        report.structure = report.structure && part.structure;
        for (auto& v : part.violations)
            note(report.violations, std::move(v));
    }
    return report;
}

VerifyReport verify_codebook(const Codebook& cb, unsigned threads) {
    return verify_codebook(cb.n, cb.words, cb.family, threads);
}

namespace io {

void write_codebook(std::ostream& os, const Codebook& cb) {
    std::string line(cb.n, '0');
    for (auto w : cb.words) {
        for (std::size_t i = 0; i < cb.n; ++i)
            line[i] = static_cast<char>('0' + ((w >> (cb.n - 1 - i)) & 1U));
        os << line << '\n';
    }
}

std::vector<Word> read_codebook(std::istream& is, std::size_t n) {
    if (n == 0 || n > 64)
        throw InputError("codeword length must be in 1..64");
    std::vector<Word> words;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty())
            continue;
        if (line.size() != n)
            throw InputError("line " + std::to_string(lineno) + ": codeword of length " +
                             std::to_string(line.size()) + ", expected " + std::to_string(n));
        try {
            words.push_back(BitString::parse(line).to_word());
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return words;
}

}  // namespace io

}  // namespace polyrecon::codes
