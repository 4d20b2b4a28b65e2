#include "polyrecon/poly.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "trapezoid.hpp"

namespace polyrecon {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("BiPoly coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("BiPoly coefficient overflow");
    return r;
}

bool term_less(const Term& a, const Term& b) {
    return std::tie(a.xdeg, a.ydeg) < std::tie(b.xdeg, b.ydeg);
}

// Dense accumulation is used when the product's support box is at most this
// many cells.
constexpr std::size_t kDenseProductLimit = std::size_t{1} << 23;

}  // namespace

BiPoly::BiPoly(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_less);
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().xdeg == t.xdeg && merged.back().ydeg == t.ydeg)
            merged.back().coef = checked_add(merged.back().coef, t.coef);
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
    terms_ = std::move(merged);
    refresh_degrees();
}

BiPoly::BiPoly(Sorted, std::vector<Term> terms) : terms_(std::move(terms)) { refresh_degrees(); }

void BiPoly::refresh_degrees() {
    degx_ = terms_.empty() ? 0 : terms_.back().xdeg;
    degy_ = 0;
    for (const auto& t : terms_)
        degy_ = std::max(degy_, t.ydeg);
}

BiPoly BiPoly::constant(std::int64_t c) { return monomial(0, 0, c); }

BiPoly BiPoly::monomial(std::uint32_t xdeg, std::uint32_t ydeg, std::int64_t c) {
    if (c == 0)
        return BiPoly{};
    return BiPoly(Sorted{}, {Term{xdeg, ydeg, c}});
}

std::int64_t BiPoly::coefficient(std::uint32_t xdeg, std::uint32_t ydeg) const {
    Term key{xdeg, ydeg, 0};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key, term_less);
    if (it == terms_.end() || it->xdeg != xdeg || it->ydeg != ydeg)
        return 0;
    return it->coef;
}

std::span<const Term> BiPoly::row(std::uint32_t xdeg) const {
    auto lo = std::lower_bound(terms_.begin(), terms_.end(), Term{xdeg, 0, 0}, term_less);
    auto hi = lo;
    while (hi != terms_.end() && hi->xdeg == xdeg)
        ++hi;
    return {lo, hi};
}

BiPoly BiPoly::shifted(std::uint32_t dx, std::uint32_t dy) const {
    std::vector<Term> out(terms_);
    for (auto& t : out) {
        t.xdeg += dx;
        t.ydeg += dy;
    }
    return BiPoly(Sorted{}, std::move(out));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        if (ib == b.terms_.end() || (ia != a.terms_.end() && term_less(*ia, *ib))) {
            out.push_back(*ia++);
        } else if (ia == a.terms_.end() || term_less(*ib, *ia)) {
            out.push_back(*ib++);
        } else {
            auto c = checked_add(ia->coef, ib->coef);
            if (c != 0)
                out.push_back({ia->xdeg, ia->ydeg, c});
            ++ia;
            ++ib;
        }
    }
    return BiPoly(BiPoly::Sorted{}, std::move(out));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    std::vector<Term> neg(b.terms_);
    for (auto& t : neg)
        t.coef = checked_mul(t.coef, -1);
    return a + BiPoly(BiPoly::Sorted{}, std::move(neg));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero())
        return BiPoly{};
    const std::size_t width = std::size_t{a.degy()} + b.degy() + 1;
    const std::size_t height = std::size_t{a.degx()} + b.degx() + 1;
    if (width * height <= kDenseProductLimit) {
        std::vector<std::int64_t> cells(width * height, 0);
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) {
                auto& cell = cells[(std::size_t{s.xdeg} + t.xdeg) * width + s.ydeg + t.ydeg];
                cell = checked_add(cell, checked_mul(s.coef, t.coef));
            }
        std::vector<Term> out;
        for (std::size_t x = 0; x < height; ++x)
            for (std::size_t y = 0; y < width; ++y)
                if (auto c = cells[x * width + y]; c != 0)
                    out.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), c});
        return BiPoly(BiPoly::Sorted{}, std::move(out));
    }
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_)
            out.push_back({s.xdeg + t.xdeg, s.ydeg + t.ydeg, checked_mul(s.coef, t.coef)});
    return BiPoly(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
    if (p.is_zero())
        return os << "0";
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first)
            os << (t.coef < 0 ? " - " : " + ");
        else if (t.coef < 0)
            os << "-";
        first = false;
        auto mag = t.coef < 0 ? -t.coef : t.coef;
        bool bare = t.xdeg == 0 && t.ydeg == 0;
        if (mag != 1 || bare)
            os << mag;
        if (t.xdeg > 0)
            os << "x" << (t.xdeg > 1 ? "^" + std::to_string(t.xdeg) : "");
        if (t.ydeg > 0)
            os << "y" << (t.ydeg > 1 ? "^" + std::to_string(t.ydeg) : "");
    }
    return os;
}

BiPoly reciprocal(const BiPoly& f) {
    std::vector<Term> out(f.terms().begin(), f.terms().end());
    for (auto& t : out) {
        t.xdeg = f.degx() - t.xdeg;
        t.ydeg = f.degy() - t.ydeg;
    }
    return BiPoly(std::move(out));
}

BiPoly p_of(const BitString& s) {
    std::vector<Term> terms;
    terms.reserve(s.size() + 1);
    std::uint32_t w = 0;
    std::uint32_t z = 0;
    terms.push_back({0, 0, 1});
    for (auto b : s.bits()) {
        (b ? w : z) += 1;
        terms.push_back({w, z, 1});
    }
    return BiPoly(std::move(terms));
}

BiPoly s_of(const CompositionMultiset& m) {
    std::vector<Term> terms;
    terms.reserve(m.entries().size());
    for (const auto& [c, mult] : m.entries())
        terms.push_back({c.ones, c.zeros, static_cast<std::int64_t>(mult)});
    return BiPoly(std::move(terms));
}

BiPoly s_of(const BitString& s) { return s_of(compose(s)); }

BiPoly f_of(const BitString& s) {
    // Gap runs of s (a_0 may be positive here) and of its reversal.
    std::vector<std::int64_t> gaps{0};
    for (auto b : s.bits()) {
        if (b)
            gaps.push_back(0);
        else
            ++gaps.back();
    }
    const std::size_t d = gaps.size() - 1;
    const std::int64_t zeros = static_cast<std::int64_t>(s.size() - d);

    std::vector<std::int64_t> alpha_start(d + 1, 0);
    std::vector<std::int64_t> beta_start(d + 1, 0);
    for (std::size_t i = 1; i <= d; ++i) {
        alpha_start[i] = alpha_start[i - 1] + gaps[i - 1];
        beta_start[i] = beta_start[i - 1] + gaps[d - i + 1];
    }

    std::vector<Term> terms;
    detail::DiffRow row(static_cast<std::size_t>(2 * zeros + 1));
    for (std::size_t j = 0; j <= 2 * d; ++j) {
        const std::size_t lo = j > d ? j - d : 0;
        const std::size_t hi = std::min(j, d);
        for (std::size_t i = lo; i <= hi; ++i)
            row.add(alpha_start[i] + beta_start[j - i], gaps[i], gaps[d - (j - i)]);
        row.drain([&](std::size_t y, std::int64_t c) {
            terms.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(y), c});
        });
    }
    return BiPoly(std::move(terms));
}

CompositionMultiset multiset_of(const BiPoly& s_poly, std::size_t n) {
    CompositionMultiset::Entries entries;
    for (const auto& t : s_poly.terms()) {
        if (t.coef <= 0)
            throw InputError("composition polynomial has a non-positive coefficient");
        entries.emplace(Composition{t.xdeg, t.ydeg}, static_cast<std::uint64_t>(t.coef));
    }
    CompositionMultiset m(n, std::move(entries));
    m.validate();
    return m;
}

BiPoly f_from_multiset(const BiPoly& s_poly, std::size_t n) {
    multiset_of(s_poly, n);  // validates
    const Term* full = nullptr;
    for (const auto& t : s_poly.terms())
        if (t.xdeg + t.ydeg == n)
            full = &t;
    if (full == nullptr)
        throw InputError("composition polynomial has no term of total degree n");
    const auto a = full->xdeg;
    const auto b = full->ydeg;
    for (const auto& t : s_poly.terms())
        if (t.xdeg > a || t.ydeg > b)
            throw InputError("composition outside the box of the full-string composition");

    std::vector<Term> mirrored(s_poly.terms().begin(), s_poly.terms().end());
    for (auto& t : mirrored) {
        t.xdeg = a - t.xdeg;
        t.ydeg = b - t.ydeg;
    }
    return (BiPoly::constant(static_cast<std::int64_t>(n + 1)) + s_poly).shifted(a, b) +
           BiPoly(std::move(mirrored));
}

BiPoly s_from_f(const BiPoly& f, std::size_t n) {
    if (f.degx() % 2 != 0 || f.degy() % 2 != 0)
        throw InputError("F has odd degree; not of the form P * P^*");
    const std::int64_t a = f.degx() / 2;
    const std::int64_t b = f.degy() / 2;
    if (static_cast<std::size_t>(a + b) != n)
        throw InputError("F degrees do not match length " + std::to_string(n));

    std::vector<Term> positive;
    std::vector<Term> negative;
    std::int64_t constant = 0;
    for (const auto& t : f.terms()) {
        const std::int64_t x = std::int64_t{t.xdeg} - a;
        const std::int64_t y = std::int64_t{t.ydeg} - b;
        if (x == 0 && y == 0)
            constant = t.coef;
        else if (x >= 0 && y >= 0)
            positive.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), t.coef});
        else if (x <= 0 && y <= 0)
            negative.push_back({static_cast<std::uint32_t>(-x), static_cast<std::uint32_t>(-y), t.coef});
        else
            throw InputError("F has a term x^" + std::to_string(t.xdeg) + " y^" +
                             std::to_string(t.ydeg) + " outside both halves");
    }
    if (constant != static_cast<std::int64_t>(n + 1))
        throw InputError("F central coefficient is " + std::to_string(constant) + ", expected " +
                         std::to_string(n + 1));
    BiPoly s_poly(std::move(positive));
    if (!(s_poly == BiPoly(std::move(negative))))
        throw InputError("F is not self-reciprocal around its centre");
    return s_poly;
}

namespace io {

void write_poly(std::ostream& os, const BiPoly& p) {
    os << "# degx=" << p.degx() << " degy=" << p.degy() << '\n';
    for (const auto& t : p.terms())
        os << t.xdeg << ' ' << t.ydeg << ' ' << t.coef << '\n';
}

std::string format_poly(const BiPoly& p) {
    std::ostringstream os;
    write_poly(os, p);
    return os.str();
}

BiPoly read_poly(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        throw InputError("line " + std::to_string(lineno) + ": " + what);
    };
    bool have_header = false;
    std::uint32_t degx = 0;
    std::uint32_t degy = 0;
    std::vector<Term> terms;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!have_header) {
            std::string hash, dx, dy;
            if (!(ls >> hash))
                continue;
            if (hash != "#" || !(ls >> dx >> dy) || !dx.starts_with("degx=") ||
                !dy.starts_with("degy="))
                fail("expected header '# degx=<a> degy=<b>'");
            try {
                degx = static_cast<std::uint32_t>(std::stoul(dx.substr(5)));
                degy = static_cast<std::uint32_t>(std::stoul(dy.substr(5)));
            } catch (const std::exception&) {
                fail("bad degree in header");
            }
            have_header = true;
            continue;
        }
        Term t;
        std::string extra;
        if (!(ls >> t.xdeg)) {
            if (ls.eof() && line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            fail("expected '<xdeg> <ydeg> <coef>'");
        }
        if (!(ls >> t.ydeg >> t.coef) || (ls >> extra))
            fail("expected '<xdeg> <ydeg> <coef>'");
        terms.push_back(t);
    }
    if (!have_header)
        throw InputError("empty polynomial file");
    BiPoly p(std::move(terms));
    if (p.degx() != degx || p.degy() != degy)
        throw InputError("header degrees do not match the terms");
    return p;
}

BiPoly parse_poly(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read_poly(is);
}

}  // namespace io

}  // namespace polyrecon
