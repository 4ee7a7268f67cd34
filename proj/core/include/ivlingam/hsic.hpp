#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ivlingam/random.hpp"

namespace ivlingam {

/// Gaussian kernel k(a, b) = exp(-(a - b)^2 / (2 bandwidth^2)).
struct KernelSpec {
    std::optional<double> bandwidth;  ///< empty: median heuristic

    [[nodiscard]] static KernelSpec median_heuristic() { return {}; }
    [[nodiscard]] static KernelSpec fixed(double bandwidth);

    /// Bandwidth to use for the sample x.
    [[nodiscard]] double resolve(std::span<const double> x) const;
};

/// Median of the strictly positive pairwise distances |x_i - x_j|, i < j.
/// Exact without enumerating all pairs: the sorted sample is searched with a
/// two-pointer pair count until only about n candidate distances remain. Zero distances (ties) are
/// skipped so that discrete variables still get a usable bandwidth.
/// Throws DegenerateInput when all values are identical.
[[nodiscard]] double median_heuristic(std::span<const double> x);

/// Largest sample for which Gram matrices are materialised.
inline constexpr std::size_t kMaxGramSize = 6000;

/// Dense symmetric Gaussian Gram matrix with cached row sums.
class GramMatrix {
public:
    [[nodiscard]] static GramMatrix gaussian(std::span<const double> x, double bandwidth);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double bandwidth() const noexcept { return bandwidth_; }
    [[nodiscard]] const double* data() const noexcept { return values_.data(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    [[nodiscard]] std::span<const double> row_sums() const noexcept { return row_sums_; }
    [[nodiscard]] double total() const noexcept { return total_; }

private:
    std::size_t n_ = 0;
    double bandwidth_ = 0.0;
    std::vector<double> values_;
    std::vector<double> row_sums_;
    double total_ = 0.0;
};

/// (1/n^2) tr(K H L H), H = I - 11'/n.
[[nodiscard]] double hsic_statistic(const GramMatrix& k, const GramMatrix& l);
[[nodiscard]] double hsic_statistic(std::span<const double> x, std::span<const double> y,
                                    const KernelSpec& kx = {}, const KernelSpec& ky = {});

/// Same statistic with y's Gram matrix generated on the fly (never stored).
[[nodiscard]] double hsic_statistic(const GramMatrix& k, std::span<const double> y, double bandwidth_y);

/// HSIC with y's Gram matrix re-indexed by a permutation of the sample.
[[nodiscard]] double hsic_statistic_permuted(const GramMatrix& k, const GramMatrix& l,
                                             std::span<const std::size_t> perm);

struct HsicResult {
    double statistic = 0.0;
    double permutation_p = 1.0;
    std::size_t permutations_used = 0;
    double bandwidth_x = 0.0;
    double bandwidth_y = 0.0;
};

/// Relative tolerance under which a permuted statistic counts as a tie with
/// the observed one.
inline constexpr double kPermutationTieTolerance = 1e-10;

/// Permutation test: p = (1 + #{r : stat_r >= stat_obs}) / (R + 1), y permuted
/// in each replicate. Replicate r draws from rng.stream("hsic", r).
/// Needs n >= 8 and R >= 99.
[[nodiscard]] HsicResult hsic_test(std::span<const double> x, std::span<const double> y, std::size_t permutations,
                                   const RandomSource& rng, const KernelSpec& kx = {}, const KernelSpec& ky = {});

/// Exact test over all n! permutations (identity included):
/// p = #{pi : stat_pi >= stat_obs} / n!. Needs 4 <= n <= 9.
[[nodiscard]] HsicResult hsic_test_exhaustive(std::span<const double> x, std::span<const double> y,
                                              const KernelSpec& kx = {}, const KernelSpec& ky = {});

inline constexpr std::size_t kMaxExhaustiveSize = 9;

}  // namespace ivlingam
