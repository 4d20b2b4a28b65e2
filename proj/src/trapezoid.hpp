#pragma once

// Products of two geometric blocks y^s (1 + ... + y^a)(1 + ... + y^b) have a
// trapezoidal coefficient profile whose second difference is four unit
// impulses. Rows of F_s and the residuals f_j are sums of such products, so
// they are handled here in second-difference form.

#include <cstdint>
#include <vector>

namespace polyrecon::detail {

struct Impulse {
    std::int64_t pos;
    std::int64_t weight;
};

/// Appends the second difference of sign * y^start (sum_{0..a} y^e)(sum_{0..b} y^e).
inline void add_block_product(std::vector<Impulse>& out, std::int64_t start, std::int64_t a,
                              std::int64_t b, std::int64_t sign = 1) {
    out.push_back({start, sign});
    out.push_back({start + a + 1, -sign});
    out.push_back({start + b + 1, -sign});
    out.push_back({start + a + b + 2, sign});
}

/// Dense second-difference accumulator over [0, width).
class DiffRow {
public:
    explicit DiffRow(std::size_t width) : diff_(width + 3, 0) {}

    void add(std::int64_t start, std::int64_t a, std::int64_t b) {
        diff_[start] += 1;
        diff_[start + a + 1] -= 1;
        diff_[start + b + 1] -= 1;
        diff_[start + a + b + 2] += 1;
    }

    /// Integrates twice, reports each nonzero coefficient, and leaves the
    /// accumulator zeroed for reuse.
    template <typename Emit>
    void drain(Emit&& emit) {
        std::int64_t slope = 0;
        std::int64_t value = 0;
        for (std::size_t e = 0; e < diff_.size(); ++e) {
            slope += diff_[e];
            value += slope;
            diff_[e] = 0;
            if (value != 0)
                emit(e, value);
        }
    }

private:
    std::vector<std::int64_t> diff_;
};

}  // namespace polyrecon::detail
