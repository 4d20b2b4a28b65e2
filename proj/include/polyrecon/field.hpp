#pragma once

#include <cstdint>
#include <vector>

namespace polyrecon {

enum class FieldPolicy {
    kSmallest,  ///< smallest prime q > n
    kSafe,      ///< smallest prime q with q - 1 > 2n + 2
};

bool is_prime(std::uint64_t q);
/// Smallest generator of (Z/q)^*. q must be prime.
std::uint64_t smallest_primitive_root(std::uint64_t q);
/// Multiplicative order of g mod q, by walking the factors of q - 1.
std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t q);

/// Prime field F_q with a primitive element and power tables up to 2n + 2.
///
/// Besides the plain tables it keeps prefix sums of the powers so that a
/// geometric block lambda^s + ... + lambda^(s+len-1) costs O(1).
class FieldCtx {
public:
    static FieldCtx make(std::size_t n, FieldPolicy policy = FieldPolicy::kSafe);
    /// Explicit prime; throws std::invalid_argument unless q is prime and q > n.
    static FieldCtx with_prime(std::size_t n, std::uint64_t q);

    std::uint64_t q() const { return q_; }
    std::uint64_t lambda() const { return lambda_; }
    std::size_t table_size() const { return pow_.size(); }

    std::uint64_t pow(std::size_t e) const { return pow_[e]; }
    std::uint64_t inv_pow(std::size_t e) const { return inv_pow_[e]; }

    /// lambda^start + ... + lambda^(start+len-1). Throws std::out_of_range
    /// if the block leaves the table.
    std::uint64_t geo_sum(std::size_t start, std::size_t len) const;
    /// Same block at lambda^-1.
    std::uint64_t inv_geo_sum(std::size_t start, std::size_t len) const;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        auto s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + q_ - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
    }
    /// Reduces a signed integer into [0, q).
    std::uint64_t reduce(std::int64_t v) const {
        auto r = v % static_cast<std::int64_t>(q_);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q_) : r);
    }

private:
    FieldCtx(std::size_t n, std::uint64_t q);

    std::uint64_t q_ = 0;
    std::uint64_t lambda_ = 0;
    std::vector<std::uint64_t> pow_;
    std::vector<std::uint64_t> inv_pow_;
    std::vector<std::uint64_t> pow_prefix_;
    std::vector<std::uint64_t> inv_pow_prefix_;
};

}  // namespace polyrecon
