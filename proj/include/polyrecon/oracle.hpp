#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "polyrecon/poly.hpp"
#include "polyrecon/strings.hpp"

namespace polyrecon::oracle {

/// Largest n build_classes accepts. POLYRECON_ORACLE_MAX_N overrides the
/// default of 20.
std::size_t max_n();

/// Deterministic text key of a multiset (its interchange format).
std::string canonical_key(const CompositionMultiset& m);

/// Every string of length n grouped by composition multiset.
class EquivClassTable {
public:
    std::size_t n() const { return n_; }
    std::size_t class_count() const { return classes_.size(); }

    /// Members sharing m, sorted; empty if no string has m.
    const std::vector<BitString>& members(const CompositionMultiset& m) const;
    const std::vector<BitString>& class_of(const BitString& s) const;

    template <typename Visit>
    void for_each_class(Visit&& visit) const {
        for (const auto& [key, members] : classes_)
            visit(members);
    }

private:
    friend EquivClassTable build_classes(std::size_t n);

    using Key = std::string;  // one byte per multiplicity
    static Key key_of(const BitString& s);
    static Key key_of(const CompositionMultiset& m);

    std::size_t n_ = 0;
    std::unordered_map<Key, std::vector<BitString>> classes_;
};

/// Throws std::invalid_argument above max_n().
EquivClassTable build_classes(std::size_t n);

/// { t : C(t) = m, t_1 = 1, t_n = 0 }. Throws InputError for a multiset no
/// string produces.
std::vector<BitString> oracle_reconstruct(const EquivClassTable& table, const CompositionMultiset& m);
std::vector<BitString> oracle_reconstruct(const CompositionMultiset& m);

/// f_j(y) coefficients (index = y-degree, trailing zeros trimmed) by explicit
/// polynomial arithmetic: the x^j slice of F minus sum_k alpha_k beta_{j-k}.
/// `low` holds a_0..a_{j-1}, `high` holds a_d, a_{d-1}, ..., a_{d-j+1}.
std::vector<std::int64_t> naive_fj(std::span<const std::int64_t> low,
                                   std::span<const std::int64_t> high, const BiPoly& f);

}  // namespace polyrecon::oracle
