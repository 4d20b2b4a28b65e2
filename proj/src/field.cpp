#include "polyrecon/field.hpp"

#include <stdexcept>
#include <string>

namespace polyrecon {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    base %= q;
    while (e > 0) {
        if (e & 1U)
            r = mulmod(r, base, q);
        base = mulmod(base, base, q);
        e >>= 1U;
    }
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0)
            continue;
        out.push_back(p);
        while (m % p == 0)
            m /= p;
    }
    if (m > 1)
        out.push_back(m);
    return out;
}

}  // namespace

bool is_prime(std::uint64_t q) {
    if (q < 2)
        return false;
    for (std::uint64_t p = 2; p * p <= q; ++p)
        if (q % p == 0)
            return false;
    return true;
}

std::uint64_t smallest_primitive_root(std::uint64_t q) {
    if (q == 2)
        return 1;
    const auto factors = prime_factors(q - 1);
    for (std::uint64_t g = 2; g < q; ++g) {
        bool generator = true;
        for (auto p : factors)
            if (powmod(g, (q - 1) / p, q) == 1) {
                generator = false;
                break;
            }
        if (generator)
            return g;
    }
    throw std::logic_error("no primitive root; modulus is not prime");
}

std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t q) {
    std::uint64_t order = q - 1;
    for (auto p : prime_factors(q - 1))
        while (order % p == 0 && powmod(g, order / p, q) == 1)
            order /= p;
    return order;
}

FieldCtx::FieldCtx(std::size_t n, std::uint64_t q) : q_(q), lambda_(smallest_primitive_root(q)) {
    const std::size_t size = 2 * n + 3;
    pow_.resize(size);
    inv_pow_.resize(size);
    const auto inv_lambda = powmod(lambda_, q - 2, q);
    pow_[0] = inv_pow_[0] = 1 % q;
    for (std::size_t e = 1; e < size; ++e) {
        pow_[e] = mulmod(pow_[e - 1], lambda_, q);
        inv_pow_[e] = mulmod(inv_pow_[e - 1], inv_lambda, q);
    }
    pow_prefix_.assign(size + 1, 0);
    inv_pow_prefix_.assign(size + 1, 0);
    for (std::size_t e = 0; e < size; ++e) {
        pow_prefix_[e + 1] = add(pow_prefix_[e], pow_[e]);
        inv_pow_prefix_[e + 1] = add(inv_pow_prefix_[e], inv_pow_[e]);
    }
}

FieldCtx FieldCtx::make(std::size_t n, FieldPolicy policy) {
    std::uint64_t q = policy == FieldPolicy::kSmallest ? n + 1 : 2 * n + 4;
    while (!is_prime(q))
        ++q;
    return FieldCtx(n, q);
}

FieldCtx FieldCtx::with_prime(std::size_t n, std::uint64_t q) {
    if (!is_prime(q))
        throw std::invalid_argument(std::to_string(q) + " is not prime");
    if (q <= n)
        throw std::invalid_argument("field prime must exceed n=" + std::to_string(n));
    return FieldCtx(n, q);
}

std::uint64_t FieldCtx::geo_sum(std::size_t start, std::size_t len) const {
    if (start + len > pow_.size())
        throw std::out_of_range("geometric block exceeds the power table");
    return sub(pow_prefix_[start + len], pow_prefix_[start]);
}

std::uint64_t FieldCtx::inv_geo_sum(std::size_t start, std::size_t len) const {
    if (start + len > inv_pow_.size())
        throw std::out_of_range("geometric block exceeds the power table");
    return sub(inv_pow_prefix_[start + len], inv_pow_prefix_[start]);
}

}  // namespace polyrecon
