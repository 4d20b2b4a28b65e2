#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrecon/strings.hpp"

namespace polyrecon {

struct Term {
    std::uint32_t xdeg = 0;
    std::uint32_t ydeg = 0;
    std::int64_t coef = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse bivariate polynomial over the integers.
///
/// Terms are kept sorted by (xdeg, ydeg) with no zero coefficients, so two
/// polynomials are equal iff their term vectors are equal. Coefficients are
/// 64-bit; arithmetic that would overflow throws std::overflow_error.
class BiPoly {
public:
    BiPoly() = default;
    /// Accepts terms in any order; merges duplicates and drops zeros.
    explicit BiPoly(std::vector<Term> terms);

    static BiPoly constant(std::int64_t c);
    static BiPoly monomial(std::uint32_t xdeg, std::uint32_t ydeg, std::int64_t c = 1);

    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Maximum degrees over the support; 0 for the zero polynomial.
    std::uint32_t degx() const { return degx_; }
    std::uint32_t degy() const { return degy_; }

    std::int64_t coefficient(std::uint32_t xdeg, std::uint32_t ydeg) const;

    /// Contiguous run of terms with the given x-degree (the slice r_j(y)).
    std::span<const Term> row(std::uint32_t xdeg) const;

    /// Multiplies by x^dx y^dy.
    BiPoly shifted(std::uint32_t dx, std::uint32_t dy) const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend bool operator==(const BiPoly&, const BiPoly&) = default;

private:
    struct Sorted {};
    BiPoly(Sorted, std::vector<Term> terms);
    void refresh_degrees();

    std::vector<Term> terms_;
    std::uint32_t degx_ = 0;
    std::uint32_t degy_ = 0;
};

std::ostream& operator<<(std::ostream& os, const BiPoly& p);

/// f*(x,y) = x^degx y^degy f(1/x, 1/y).
BiPoly reciprocal(const BiPoly& f);

/// P_s: one monomial x^w y^z per prefix s_1^j, j = 0..n.
BiPoly p_of(const BitString& s);
/// S_s: generating polynomial of C(s), x for a one and y for a zero.
BiPoly s_of(const BitString& s);
BiPoly s_of(const CompositionMultiset& m);
/// F_s = P_s * P_s^*, built row by row from the gap geometry.
BiPoly f_of(const BitString& s);

/// F = x^a y^b (n + 1 + S) + S^*, where x^a y^b is the length-n term of S.
/// Throws InputError if S is not a valid composition polynomial for length n.
BiPoly f_from_multiset(const BiPoly& s_poly, std::size_t n);
/// Inverse of f_from_multiset. Throws InputError on residual terms that
/// belong to neither half of the Laurent expansion.
BiPoly s_from_f(const BiPoly& f, std::size_t n);

/// Reads S back into multiset form (all coefficients must be positive).
CompositionMultiset multiset_of(const BiPoly& s_poly, std::size_t n);

namespace io {

/// "# degx=<a> degy=<b>" header, then "<xdeg> <ydeg> <coef>" lines.
void write_poly(std::ostream& os, const BiPoly& p);
std::string format_poly(const BiPoly& p);
BiPoly read_poly(std::istream& is);
BiPoly parse_poly(std::string_view text);

}  // namespace io

}  // namespace polyrecon
