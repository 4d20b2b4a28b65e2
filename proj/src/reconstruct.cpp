#include "polyrecon/reconstruct.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "trapezoid.hpp"

namespace polyrecon {

using BigInt = boost::multiprecision::cpp_int;
using detail::Impulse;

namespace {

FieldCtx make_field(std::size_t n, const ReconOptions& options) {
    if (options.field_prime)
        return FieldCtx::with_prime(n, *options.field_prime);
    return FieldCtx::make(n, options.field_policy);
}

// Highest exponent with a nonzero coefficient, and that coefficient, for the
// polynomial whose second difference is the union of `row` (sorted by
// descending position) and `extra` (any order). Returns {-1, 0} for zero.
std::pair<std::int64_t, std::int64_t> top_term(std::span<const Impulse> row,
                                               std::vector<Impulse>& extra,
                                               std::vector<Impulse>& merged) {
    std::sort(extra.begin(), extra.end(),
              [](const Impulse& a, const Impulse& b) { return a.pos > b.pos; });
    merged.clear();
    auto push = [&](const Impulse& imp) {
        if (!merged.empty() && merged.back().pos == imp.pos)
            merged.back().weight += imp.weight;
        else
            merged.push_back(imp);
    };
    std::size_t i = 0;
    std::size_t k = 0;
    while (i < row.size() || k < extra.size()) {
        if (k == extra.size() || (i < row.size() && row[i].pos >= extra[k].pos))
            push(row[i++]);
        else
            push(extra[k++]);
    }

    std::erase_if(merged, [](const Impulse& imp) { return imp.weight == 0; });

    // c(e) = sum_{p >= e+2} (p - e - 1) D(p), linear in e between impulses.
    std::int64_t s0 = 0;
    std::int64_t s1 = 0;
    for (std::size_t m = 0; m < merged.size(); ++m) {
        s0 += merged[m].weight;
        s1 += merged[m].pos * merged[m].weight;
        const std::int64_t next = m + 1 < merged.size() ? merged[m + 1].pos : -1;
        const std::int64_t hi = merged[m].pos - 2;
        const std::int64_t lo = std::max<std::int64_t>(next - 1, 0);
        if (hi < 0)
            break;
        if (hi < lo)
            continue;
        if (auto c = s1 - (hi + 1) * s0; c != 0)
            return {hi, c};
        if (s0 != 0 && hi - 1 >= lo)
            return {hi - 1, s1 - hi * s0};
    }
    return {-1, 0};
}

}  // namespace

struct Reconstructor::RowData {
    std::int64_t at_one = 0;
    std::uint64_t at_lambda = 0;
    std::uint64_t at_lambda_inv = 0;
    std::vector<Impulse> impulses;  // second difference of r_j, descending
};

struct Reconstructor::BigTables {
    BigInt base;
    std::vector<BigInt> powers;  // base^e
    std::vector<BigInt> prefix;  // sum_{i<e} base^i
    std::vector<BigInt> rows;    // r_j(base)

    BigInt block(std::int64_t start, std::int64_t len) const {
        return prefix[static_cast<std::size_t>(start + len)] - prefix[static_cast<std::size_t>(start)];
    }
};

ReconParams recover_params(const BiPoly& f) {
    if (f.is_zero())
        throw InputError("F is zero");
    if (f.degx() % 2 != 0)
        throw InputError("deg F(x,1) is odd");
    if ((f.degx() + f.degy()) % 2 != 0)
        throw InputError("degx(F) + degy(F) is odd");
    ReconParams p;
    p.d = f.degx() / 2;
    p.n = (std::size_t{f.degx()} + f.degy()) / 2;
    std::int64_t f01 = 0;
    for (const auto& t : f.row(0))
        f01 += t.coef;
    p.a_d = f01 - 1;
    if (p.d == 0)
        throw InputError("F describes a string without ones");
    if (f01 < 2)
        throw InputError("F(0,1) < 2: the string cannot end in 0");
    if (p.a_d > static_cast<std::int64_t>(p.n - p.d))
        throw InputError("F(0,1) exceeds the number of zeros");
    return p;
}

Reconstructor::Reconstructor(const BiPoly& f, ReconOptions options)
    : f_(&f),
      options_(options),
      params_(recover_params(f)),
      field_(make_field(params_.n, options)) {
    last_step_ = params_.d >= 1 ? (params_.d - 1) / 2 : 0;
    // The search stops at last_step_; the row at j = d/2 is kept for inspection.
    const std::size_t rows = params_.d / 2;

    rows_.resize(rows + 1);
    for (std::size_t j = 1; j <= rows; ++j) {
        auto row = f.row(static_cast<std::uint32_t>(j));
        auto& data = rows_[j];
        for (const auto& t : row) {
            data.at_one += t.coef;
            const auto c = field_.reduce(t.coef);
            data.at_lambda = field_.add(data.at_lambda, field_.mul(c, field_.pow(t.ydeg)));
            data.at_lambda_inv = field_.add(data.at_lambda_inv, field_.mul(c, field_.inv_pow(t.ydeg)));
        }
        if (row.empty())
            continue;
        // D(e) = c(e) - 2c(e-1) + c(e-2), walked densely over the row's span.
        const std::int64_t lo = row.front().ydeg;
        const std::int64_t hi = row.back().ydeg + 2;
        std::int64_t c1 = 0;
        std::int64_t c2 = 0;
        std::size_t t = 0;
        for (std::int64_t e = lo; e <= hi; ++e) {
            std::int64_t c0 = 0;
            if (t < row.size() && row[t].ydeg == e)
                c0 = row[t++].coef;
            if (auto dd = c0 - 2 * c1 + c2; dd != 0)
                data.impulses.push_back({e, dd});
            c2 = c1;
            c1 = c0;
        }
        std::reverse(data.impulses.begin(), data.impulses.end());
    }

    if (options_.degree_method == DegreeMethod::kBaseEvaluation) {
        big_ = std::make_unique<BigTables>();
        big_->base = BigInt(params_.n + 1);
        const std::size_t size = 2 * params_.n + 4;
        big_->powers.resize(size);
        big_->prefix.resize(size + 1);
        big_->powers[0] = 1;
        for (std::size_t e = 1; e < size; ++e)
            big_->powers[e] = big_->powers[e - 1] * big_->base;
        big_->prefix[0] = 0;
        for (std::size_t e = 0; e < size; ++e)
            big_->prefix[e + 1] = big_->prefix[e] + big_->powers[e];
        big_->rows.resize(rows + 1);
        for (std::size_t j = 1; j <= rows; ++j)
            for (const auto& t : f.row(static_cast<std::uint32_t>(j)))
                big_->rows[j] += big_->powers[t.ydeg] * t.coef;
    }
}

Reconstructor::~Reconstructor() = default;
Reconstructor::Reconstructor(Reconstructor&&) noexcept = default;
Reconstructor& Reconstructor::operator=(Reconstructor&&) noexcept = default;

std::vector<std::size_t> ReconState::pause_steps() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < paused_.size(); ++k)
        if (paused_[k])
            out.push_back(k);
    return out;
}

ReconState Reconstructor::initial_state() const {
    ReconState st;
    const auto a_d = params_.a_d;
    st.low_ = {0};
    st.high_ = {a_d};
    st.low_sum_ = {0, 0};
    st.high_sum_ = {0, a_d};
    st.alpha_lambda_ = {1};
    st.alpha_inv_ = {1};
    st.beta_lambda_ = {field_.geo_sum(0, static_cast<std::size_t>(a_d + 1))};
    st.beta_inv_ = {field_.inv_geo_sum(0, static_cast<std::size_t>(a_d + 1))};
    st.paused_ = {false};
    return st;
}

ReconState Reconstructor::state_for(const GapString& a, std::size_t j) const {
    if (a.weight() != params_.d || a[params_.d] != params_.a_d)
        throw InputError("gap string does not match the parameters of F");
    auto st = initial_state();
    for (std::size_t k = 1; k < j; ++k)
        apply(st, {a[k], a[params_.d - k]}, false);
    return st;
}

void Reconstructor::apply(ReconState& st, const GapPair& pair, bool paused) const {
    const auto lo_start = st.low_sum_.back();
    const auto hi_start = st.high_sum_.back();
    const auto lo_len = static_cast<std::size_t>(pair.low + 1);
    const auto hi_len = static_cast<std::size_t>(pair.high + 1);
    st.alpha_lambda_.push_back(field_.geo_sum(static_cast<std::size_t>(lo_start), lo_len));
    st.alpha_inv_.push_back(field_.inv_geo_sum(static_cast<std::size_t>(lo_start), lo_len));
    st.beta_lambda_.push_back(field_.geo_sum(static_cast<std::size_t>(hi_start), hi_len));
    st.beta_inv_.push_back(field_.inv_geo_sum(static_cast<std::size_t>(hi_start), hi_len));
    st.low_.push_back(pair.low);
    st.high_.push_back(pair.high);
    st.low_sum_.push_back(lo_start + pair.low);
    st.high_sum_.push_back(hi_start + pair.high);
    st.paused_.push_back(paused);
}

void Reconstructor::truncate(ReconState& st, std::size_t j) const {
    st.low_.resize(j);
    st.high_.resize(j);
    st.low_sum_.resize(j + 1);
    st.high_sum_.resize(j + 1);
    st.alpha_lambda_.resize(j);
    st.alpha_inv_.resize(j);
    st.beta_lambda_.resize(j);
    st.beta_inv_.resize(j);
    st.paused_.resize(j);
}

StepValues Reconstructor::f_j_values(const ReconState& st) const {
    const std::size_t j = st.step();
    const auto& row = rows_.at(j);
    StepValues out;
    out.at_one = row.at_one;
    out.at_lambda = row.at_lambda;
    out.at_lambda_inv = row.at_lambda_inv;

    thread_local std::vector<Impulse> extra;
    thread_local std::vector<Impulse> merged;
    extra.clear();
    for (std::size_t k = 1; k < j; ++k) {
        const std::size_t m = j - k;
        out.at_one -= (st.low_[k] + 1) * (st.high_[m] + 1);
        out.at_lambda = field_.sub(out.at_lambda, field_.mul(st.alpha_lambda_[k], st.beta_lambda_[m]));
        out.at_lambda_inv = field_.sub(out.at_lambda_inv, field_.mul(st.alpha_inv_[k], st.beta_inv_[m]));
        if (options_.degree_method == DegreeMethod::kSecondDifference)
            detail::add_block_product(extra, st.low_sum_[k] + st.high_sum_[m], st.low_[k], st.high_[m], -1);
    }

    if (options_.degree_method == DegreeMethod::kSecondDifference) {
        auto [deg, lead] = top_term(row.impulses, extra, merged);
        out.degree = deg;
        out.leading = lead;
    } else {
        evaluate_base(st, out);
    }
    return out;
}

void Reconstructor::evaluate_base(const ReconState& st, StepValues& out) const {
    const std::size_t j = st.step();
    BigInt value = big_->rows[j];
    for (std::size_t k = 1; k < j; ++k) {
        const std::size_t m = j - k;
        value -= big_->block(st.low_sum_[k], st.low_[k] + 1) * big_->block(st.high_sum_[m], st.high_[m] + 1);
    }
    if (value <= 0) {
        out.degree = -1;
        return;
    }
    auto it = std::upper_bound(big_->powers.begin(), big_->powers.end(), value);
    out.degree = static_cast<std::int64_t>(it - big_->powers.begin()) - 1;
}

std::vector<Candidate> Reconstructor::candidate_pairs(const StepValues& v, const ReconState& st) const {
    std::vector<Candidate> out;
    if (v.degree < 0)
        return out;
    if (options_.degree_method == DegreeMethod::kSecondDifference && v.leading <= 0)
        return out;
    const auto a_d = params_.a_d;
    const auto g_lo = st.low_sum();
    const auto g_hi = st.high_sum();
    // At j = d/2 both sides name the same middle gap. Branches that overrun
    // the zero budget are left for close() to reject, so the pairs seen here
    // are exactly the two-tuple solutions.
    const bool middle = 2 * st.step() == params_.d;
    auto keep = [&](GapPair p, CandidateKind kind) {
        if (p.low < 0 || p.high < 0 || (middle && p.low != p.high))
            return;
        for (const auto& c : out)
            if (c.pair == p)
                return;
        out.push_back({p, kind});
    };

    {
        GapPair p;
        p.low = v.degree - g_lo - a_d;
        p.high = v.at_one - 1 - (a_d + 1) * (p.low + 1);
        keep(p, CandidateKind::kLowCarriesDegree);
    }
    {
        GapPair p;
        p.high = v.degree - g_hi;
        const auto num = v.at_one - 1 - p.high;
        if (num >= 0 && num % (a_d + 1) == 0) {
            p.low = num / (a_d + 1) - 1;
            keep(p, CandidateKind::kHighCarriesDegree);
        }
    }
    return out;
}

bool Reconstructor::validate_pair(const GapPair& pair, const ReconState& st, const StepValues& v) const {
    const auto lo_start = static_cast<std::size_t>(st.low_sum());
    const auto hi_start = static_cast<std::size_t>(st.high_sum());
    const auto lo_len = static_cast<std::size_t>(pair.low + 1);
    const auto hi_len = static_cast<std::size_t>(pair.high + 1);
    if (lo_start + lo_len > field_.table_size() || hi_start + hi_len > field_.table_size())
        return false;
    // Degree and value at 1 first; the two field points then separate what is left.
    const auto a_d = params_.a_d;
    const auto top = std::max<std::int64_t>(st.high_sum() + pair.high, st.low_sum() + pair.low + a_d);
    if (top != v.degree || (pair.high + 1) + (pair.low + 1) * (a_d + 1) != v.at_one)
        return false;
    // alpha_0 = 1.
    const auto at_lambda = field_.add(field_.geo_sum(hi_start, hi_len),
                                      field_.mul(field_.geo_sum(lo_start, lo_len), st.beta_lambda_[0]));
    if (at_lambda != v.at_lambda)
        return false;
    const auto at_inv = field_.add(field_.inv_geo_sum(hi_start, hi_len),
                                   field_.mul(field_.inv_geo_sum(lo_start, lo_len), st.beta_inv_[0]));
    return at_inv == v.at_lambda_inv;
}

std::optional<BitString> Reconstructor::close(const ReconState& st) const {
    const std::size_t d = params_.d;
    const std::size_t j = st.step();
    std::vector<std::int64_t> gaps(d + 1, 0);
    std::vector<bool> assigned(d + 1, false);
    for (std::size_t k = 0; k < j && k <= d; ++k) {
        gaps[k] = st.low_[k];
        assigned[k] = true;
        gaps[d - k] = st.high_[k];
        assigned[d - k] = true;
    }
    std::int64_t budget = static_cast<std::int64_t>(params_.n - d);
    std::int64_t used = 0;
    std::size_t open = d + 1;
    for (std::size_t k = 0; k <= d; ++k)
        if (assigned[k]) {
            used += gaps[k];
            --open;
        }
    const auto rest = budget - used;
    if (rest < 0)
        return std::nullopt;
    if (open == 0) {
        if (rest != 0)
            return std::nullopt;
    } else if (open == 1) {
        for (std::size_t k = 0; k <= d; ++k)
            if (!assigned[k])
                gaps[k] = rest;
    } else {
        return std::nullopt;  // not at the middle yet
    }
    auto candidate = gap_decode(GapString(std::move(gaps)));
    if (!(f_of(candidate) == *f_))
        return std::nullopt;
    return candidate;
}

std::vector<BitString> ReconReport::strings() const {
    std::vector<BitString> out;
    out.reserve(results.size());
    for (const auto& r : results)
        out.push_back(r.string);
    return out;
}

ReconReport Reconstructor::run() const {
    ReconReport rep;
    rep.params = params_;
    rep.q = field_.q();
    rep.lambda = field_.lambda();

    struct Pending {
        std::size_t step;
        GapPair pair;
        std::size_t pause_index;
    };
    std::vector<Pending> pending;
    auto st = initial_state();

    auto resume = [&]() {
        if (pending.empty())
            return false;
        const auto p = pending.back();
        pending.pop_back();
        truncate(st, p.step);
        apply(st, p.pair, true);
        rep.pauses[p.pause_index].other_explored = true;
        ++rep.total_backtracks;
        if (rep.results.empty())
            ++rep.backtracks;
        if (options_.trace)
            rep.trace.push_back({p.step, p.pair, true, true});
        return true;
    };

    bool stopped = false;
    while (true) {
        if (st.step() > last_step_) {
            if (auto t = close(st)) {
                rep.results.push_back({*t, st.pause_steps(), l_s_of(*t)});
                if (options_.stop_at_first) {
                    stopped = true;
                    break;
                }
            } else {
                ++rep.dead_ends;
            }
            if (!resume())
                break;
            continue;
        }

        const auto values = f_j_values(st);
        std::vector<Candidate> valid;
        for (const auto& c : candidate_pairs(values, st))
            if (validate_pair(c.pair, st, values))
                valid.push_back(c);

        if (valid.empty()) {
            ++rep.dead_ends;
            if (!resume())
                break;
            continue;
        }
        const std::size_t j = st.step();
        const bool pause = valid.size() == 2;
        if (pause) {
            rep.pauses.push_back({j, valid[0].pair, valid[1].pair, false});
            if (!options_.type1_only)
                pending.push_back({j, valid[1].pair, rep.pauses.size() - 1});
        }
        apply(st, valid[0].pair, pause);
        if (options_.trace)
            rep.trace.push_back({j, valid[0].pair, pause, false});
    }

    std::sort(rep.results.begin(), rep.results.end(),
              [](const ReconResult& a, const ReconResult& b) { return a.string < b.string; });
    if (stopped)
        rep.status = ReconStatus::kStoppedAtFirst;
    else
        rep.status = rep.results.empty() ? ReconStatus::kExhausted : ReconStatus::kComplete;
    return rep;
}

ReconReport reconstruct(const BiPoly& f, const ReconOptions& options) {
    return Reconstructor(f, options).run();
}

std::vector<PauseInfo> pause_profile(const BitString& s) {
    if (!s.is_reconstruction_facing())
        throw InputError("pause profile needs s_1 = 1 and s_n = 0");
    const auto a = gap_encode(s);
    const std::size_t d = a.weight();
    const auto a_d = a[d];
    std::vector<PauseInfo> out;
    std::int64_t g_low = 0;   // g_0^j
    std::int64_t g_high = a_d;  // g_{d-j}^d
    for (std::size_t j = 1; 2 * j < d; ++j) {
        g_low += a[j];
        g_high += a[d - j];
        const bool type1 = g_low - g_high == 1 && a[j] >= 1;
        const bool type2 = g_high - g_low == a_d + 1 && a[d - j] >= a_d + 1;
        if (type1 && type2)
            out.push_back({j, PauseType::kBoth});
        else if (type1)
            out.push_back({j, PauseType::kType1});
        else if (type2)
            out.push_back({j, PauseType::kType2});
    }
    return out;
}

std::size_t l_s_of(const BitString& s) {
    const std::size_t n = s.size();
    std::size_t pre = 0;
    std::size_t suf = 0;
    std::size_t count = 0;
    for (std::size_t i = 1; 2 * i < n; ++i) {
        pre += s[i - 1];
        suf += s[n - i];
        if (pre == suf && s[i] != s[n - 1 - i])
            ++count;
    }
    return count;
}

}  // namespace polyrecon
