#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "polyrecon/field.hpp"
#include "polyrecon/poly.hpp"
#include "polyrecon/strings.hpp"

namespace polyrecon {

/// How deg(f_j) is extracted at each step.
enum class DegreeMethod {
    /// Exact: walk the merged second-difference impulses of f_j from the top.
    kSecondDifference,
    /// floor(log_{n+1} f_j(n+1)) with arbitrary-precision integers. Only
    /// faithful while f_j has coefficients in [0, n], i.e. on a correct branch.
    kBaseEvaluation,
};

struct ReconOptions {
    FieldPolicy field_policy = FieldPolicy::kSafe;
    std::optional<std::uint64_t> field_prime;
    DegreeMethod degree_method = DegreeMethod::kSecondDifference;
    bool stop_at_first = false;
    /// Codebook decoding: at a pause only follow the type-1 pair.
    bool type1_only = false;
    bool trace = false;
};

/// Weight d, last gap a_d and length n read off F.
struct ReconParams {
    std::size_t n = 0;
    std::size_t d = 0;
    std::int64_t a_d = 0;
};

/// Throws InputError for an F that cannot be F_s of a string with s_1 = 1,
/// s_n = 0.
ReconParams recover_params(const BiPoly& f);

/// (a_j, a_{d-j}).
struct GapPair {
    std::int64_t low = 0;
    std::int64_t high = 0;

    friend bool operator==(const GapPair&, const GapPair&) = default;
};

enum class CandidateKind {
    kLowCarriesDegree,   ///< deg(f_j) = g_0^j + a_d; the type-1 pair at a pause
    kHighCarriesDegree,  ///< deg(f_j) = g_{d-j}^d; the type-2 pair at a pause
};

struct Candidate {
    GapPair pair;
    CandidateKind kind;
};

/// f_j evaluated where the algorithm needs it. `degree` is -1 when f_j
/// vanishes; `leading` is its top coefficient (second-difference method only,
/// 0 otherwise).
struct StepValues {
    std::int64_t degree = -1;
    std::int64_t leading = 0;
    std::int64_t at_one = 0;
    std::uint64_t at_lambda = 0;
    std::uint64_t at_lambda_inv = 0;
};

/// Partial gap string during the search: a_0..a_{j-1} from the left,
/// a_d..a_{d-j+1} from the right, plus per-step caches of alpha_k and beta_k
/// at lambda and lambda^-1. Backtracking truncates the per-step vectors.
class ReconState {
public:
    /// The step about to be performed.
    std::size_t step() const { return low_.size(); }
    std::int64_t low_sum() const { return low_sum_.back(); }    // g_0^{j-1}
    std::int64_t high_sum() const { return high_sum_.back(); }  // g_{d-j+1}^d
    std::span<const std::int64_t> low_gaps() const { return low_; }
    /// a_d, a_{d-1}, ... in that order.
    std::span<const std::int64_t> high_gaps() const { return high_; }
    /// Steps at which the path to this state took one of two validated pairs.
    std::vector<std::size_t> pause_steps() const;

private:
    friend class Reconstructor;

    std::vector<std::int64_t> low_;
    std::vector<std::int64_t> high_;
    // Entry k holds g_0^{k-1} (resp. g_{d-k+1}^d); entry j is the running sum.
    std::vector<std::int64_t> low_sum_;
    std::vector<std::int64_t> high_sum_;
    std::vector<std::uint64_t> alpha_lambda_;
    std::vector<std::uint64_t> alpha_inv_;
    std::vector<std::uint64_t> beta_lambda_;
    std::vector<std::uint64_t> beta_inv_;
    std::vector<bool> paused_;
};

struct PauseEvent {
    std::size_t step = 0;
    GapPair taken;
    GapPair other;
    bool other_explored = false;
};

struct TraceLine {
    std::size_t step = 0;
    GapPair pair;
    bool pause = false;
    bool backtrack = false;
};

struct ReconResult {
    BitString string;
    std::vector<std::size_t> pause_steps;
    std::size_t l_s = 0;
};

enum class ReconStatus {
    kComplete,       ///< whole tree searched, at least one result
    kStoppedAtFirst,
    kExhausted,      ///< whole tree searched, nothing matched F
};

struct ReconReport {
    ReconStatus status = ReconStatus::kExhausted;
    ReconParams params;
    std::uint64_t q = 0;
    std::uint64_t lambda = 0;
    std::vector<ReconResult> results;  // sorted by string
    std::vector<PauseEvent> pauses;    // every branch point met, in search order
    std::size_t backtracks = 0;        // branches resumed before the first result
    std::size_t total_backtracks = 0;  // branches resumed over the whole search
    std::size_t dead_ends = 0;
    std::vector<TraceLine> trace;

    std::vector<BitString> strings() const;
};

/// One reconstruction problem: F plus the tables derived from it.
class Reconstructor {
public:
    explicit Reconstructor(const BiPoly& f, ReconOptions options = {});
    ~Reconstructor();
    Reconstructor(Reconstructor&&) noexcept;
    Reconstructor& operator=(Reconstructor&&) noexcept;

    const ReconParams& params() const { return params_; }
    const FieldCtx& field() const { return field_; }
    const ReconOptions& options() const { return options_; }
    /// Last step that assigns a pair: the largest j < d/2 (0 if none).
    std::size_t last_step() const { return last_step_; }

    ReconState initial_state() const;
    /// State after feeding the true pairs of `a` for steps 1..j-1.
    ReconState state_for(const GapString& a, std::size_t j) const;

    /// Defined for steps 1..d/2.
    StepValues f_j_values(const ReconState& state) const;
    /// Up to two distinct non-negative pairs read off deg f_j and f_j(1).
    /// The type-1 candidate comes first.
    std::vector<Candidate> candidate_pairs(const StepValues& values, const ReconState& state) const;
    /// beta_j + alpha_j beta_0 matches f_j in degree, at 1, at lambda and at
    /// lambda^-1.
    bool validate_pair(const GapPair& pair, const ReconState& state, const StepValues& values) const;

    void apply(ReconState& state, const GapPair& pair, bool paused) const;
    /// Drops everything assigned at steps >= j.
    void truncate(ReconState& state, std::size_t j) const;
    /// Closes the middle gap(s) and returns the string iff f_of(string) == F.
    std::optional<BitString> close(const ReconState& state) const;

    ReconReport run() const;

private:
    struct RowData;
    struct BigTables;

    void evaluate_base(const ReconState& state, StepValues& out) const;

    const BiPoly* f_;
    ReconOptions options_;
    ReconParams params_;
    FieldCtx field_;
    std::size_t last_step_ = 0;
    std::vector<RowData> rows_;  // index j = 1..d/2
    std::unique_ptr<BigTables> big_;
};

ReconReport reconstruct(const BiPoly& f, const ReconOptions& options = {});

enum class PauseType { kType1, kType2, kBoth };

struct PauseInfo {
    std::size_t step = 0;
    PauseType type = PauseType::kType1;

    friend bool operator==(const PauseInfo&, const PauseInfo&) = default;
};

/// Steps 0 < j < d/2 at which two pairs fit f_j. Type 1:
/// g_0^j - g_{d-j}^d = 1 and a_j >= 1. Type 2: g_{d-j}^d - g_0^j = a_d + 1 and
/// a_{d-j} >= a_d + 1.
/// Requires s_1 = 1 and s_n = 0.
std::vector<PauseInfo> pause_profile(const BitString& s);

/// #{ i < n/2 : wt(s_1^i) = wt(s_{n+1-i}^n) and s_{i+1} != s_{n-i} }.
std::size_t l_s_of(const BitString& s);

}  // namespace polyrecon
