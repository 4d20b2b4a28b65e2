#include "polyrecon/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace polyrecon::oracle {

std::size_t max_n() {
    if (const char* env = std::getenv("POLYRECON_ORACLE_MAX_N")) {
        try {
            return static_cast<std::size_t>(std::stoul(env));
        } catch (const std::exception&) {
        }
    }
    return 20;
}

std::string canonical_key(const CompositionMultiset& m) { return io::format_multiset(m); }

// Multiplicities in (length, ones) order, one byte each; n <= 255 keeps every
// multiplicity below 256.
EquivClassTable::Key EquivClassTable::key_of(const BitString& s) {
    const std::size_t n = s.size();
    std::vector<std::uint32_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + s[i];
    Key key(n * (n + 3) / 2, 0);
    // Offset of length L is sum_{l<L} (l + 1) over l = 1..L-1.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            const std::size_t len = j - i;
            const std::size_t offset = (len - 1) * (len + 2) / 2;
            ++key[offset + prefix[j] - prefix[i]];
        }
    return key;
}

EquivClassTable::Key EquivClassTable::key_of(const CompositionMultiset& m) {
    const std::size_t n = m.n();
    Key key(n * (n + 3) / 2, 0);
    for (const auto& [c, mult] : m.entries()) {
        const std::size_t len = c.length();
        key[(len - 1) * (len + 2) / 2 + c.ones] = static_cast<char>(mult);
    }
    return key;
}

const std::vector<BitString>& EquivClassTable::members(const CompositionMultiset& m) const {
    static const std::vector<BitString> kEmpty;
    if (m.n() != n_)
        return kEmpty;
    auto it = classes_.find(key_of(m));
    return it == classes_.end() ? kEmpty : it->second;
}

const std::vector<BitString>& EquivClassTable::class_of(const BitString& s) const {
    return classes_.at(key_of(s));
}

EquivClassTable build_classes(std::size_t n) {
    if (n > max_n() || n > 255)
        throw std::invalid_argument("oracle limited to n <= " + std::to_string(max_n()));
    if (n > 62)
        throw std::invalid_argument("oracle enumeration needs n <= 62");
    EquivClassTable table;
    table.n_ = n;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t w = 0; w < count; ++w) {
        auto s = BitString::from_word(w, n);
        auto key = EquivClassTable::key_of(s);
        table.classes_[std::move(key)].push_back(std::move(s));
    }
    // Enumeration order is numeric, which is already lexicographic.
    return table;
}

std::vector<BitString> oracle_reconstruct(const EquivClassTable& table, const CompositionMultiset& m) {
    m.validate();
    const auto& cls = table.members(m);
    if (cls.empty())
        throw InputError("no string of length " + std::to_string(m.n()) + " has this multiset");
    std::vector<BitString> out;
    for (const auto& t : cls)
        if (t.is_reconstruction_facing())
            out.push_back(t);
    return out;
}

std::vector<BitString> oracle_reconstruct(const CompositionMultiset& m) {
    return oracle_reconstruct(build_classes(m.n()), m);
}

std::vector<std::int64_t> naive_fj(std::span<const std::int64_t> low, std::span<const std::int64_t> high,
                                   const BiPoly& f) {
    const std::size_t j = low.size();
    if (high.size() != j)
        throw std::invalid_argument("naive_fj needs as many high gaps as low gaps");

    std::vector<std::int64_t> fj;
    for (const auto& t : f.row(static_cast<std::uint32_t>(j))) {
        if (fj.size() <= t.ydeg)
            fj.resize(t.ydeg + 1, 0);
        fj[t.ydeg] += t.coef;
    }

    // alpha_k: ones on [g_0^{k-1}, g_0^k]; beta_k: ones on [g_{d-k+1}^d, g_{d-k}^d].
    auto block = [](std::int64_t start, std::int64_t len) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(start + len + 1), 0);
        for (std::int64_t e = start; e <= start + len; ++e)
            v[static_cast<std::size_t>(e)] = 1;
        return v;
    };
    std::vector<std::int64_t> low_start(j + 1, 0);
    std::vector<std::int64_t> high_start(j + 1, 0);
    for (std::size_t k = 1; k <= j; ++k) {
        low_start[k] = low_start[k - 1] + low[k - 1];
        high_start[k] = high_start[k - 1] + high[k - 1];
    }
    for (std::size_t k = 1; k < j; ++k) {
        const auto alpha = block(low_start[k], low[k]);
        const auto beta = block(high_start[j - k], high[j - k]);
        for (std::size_t u = 0; u < alpha.size(); ++u) {
            if (alpha[u] == 0)
                continue;
            for (std::size_t v = 0; v < beta.size(); ++v) {
                if (beta[v] == 0)
                    continue;
                if (fj.size() <= u + v)
                    fj.resize(u + v + 1, 0);
                fj[u + v] -= alpha[u] * beta[v];
            }
        }
    }
    while (!fj.empty() && fj.back() == 0)
        fj.pop_back();
    return fj;
}

}  // namespace polyrecon::oracle
