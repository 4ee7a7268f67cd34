#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivlingam/dataset.hpp"
#include "ivlingam/outcome.hpp"
#include "ivlingam/random.hpp"

// Tests of the exclusion restriction H0: alpha_zy = 0 on a dataset with one
// instrument, one treatment and one outcome. alpha_zy is the instrument's
// direct effect on the outcome in the DirectLiNGAM fit.
namespace ivlingam {

/// alpha_zy estimates from row-resampled refits. Replicates whose estimated
/// ordering is not instrument -> treatment -> outcome are dropped, as are
/// replicates whose fit failed.
struct BootstrapReplicates {
    std::vector<double> alpha_zy;  ///< kept replicates, by replicate index
    std::size_t requested = 0;
    std::size_t inconsistent = 0;
    std::size_t failed = 0;

    [[nodiscard]] std::size_t dropped() const noexcept { return inconsistent + failed; }
    friend bool operator==(const BootstrapReplicates&, const BootstrapReplicates&) = default;
};

/// Replicate b resamples rows with rng.stream("bootstrap", b). Needs B >= 99.
[[nodiscard]] BootstrapReplicates bootstrap_replicates(const Dataset& data, std::size_t B, const RandomSource& rng);

/// Percentile interval of the m kept replicates: the j-th smallest and j-th
/// largest, j = ceil(m alpha / 2). Rejects iff 0 lies outside. The p-value
/// 2 min(#{a <= 0}, #{a >= 0}) / m, floored at 1/(m + 1), agrees with that
/// decision (p < alpha iff rejected) whenever alpha > 1/(m + 1).
/// Statistic: alpha_zy hat.
[[nodiscard]] TestOutcome bootstrap_percentile_test(const Dataset& data, std::size_t B, double alpha,
                                                    const RandomSource& rng);
[[nodiscard]] TestOutcome bootstrap_percentile_test(double alpha_zy_hat, const BootstrapReplicates& reps,
                                                    double alpha);

/// W = alpha_zy hat / SD(replicates), p = 2 (1 - Phi(|W|)). Throws
/// ZeroBootstrapSpread when every kept replicate is identical.
[[nodiscard]] TestOutcome asymptotic_normal_test(const Dataset& data, std::size_t B, const RandomSource& rng,
                                                 double alpha = 0.05);
[[nodiscard]] TestOutcome asymptotic_normal_test(double alpha_zy_hat, const BootstrapReplicates& reps,
                                                 double alpha = 0.05);

/// Refits with the instrument column permuted (rng.stream("permutation", r)),
/// p = (1 + #{|a_r| >= |a_obs|}) / (R + 1). Statistic: |alpha_zy hat|.
/// Needs R >= 99.
[[nodiscard]] TestOutcome permutation_test(const Dataset& data, std::size_t R, const RandomSource& rng,
                                           double alpha = 0.05);

/// Same statistic over all n! orderings of the instrument column, identity
/// included: p = #{pi : |a_pi| >= |a_obs|} / n!. Needs n <= 9.
[[nodiscard]] TestOutcome permutation_test_exhaustive(const Dataset& data, double alpha = 0.05);

/// Silverman's normal-reference rule (4 / 3n)^(1/5) sd, about 1.06 sd n^(-1/5).
/// Throws BandwidthDegenerate for a constant sample.
[[nodiscard]] double silverman_bandwidth(std::span<const double> x);

/// sum_i log f_{-i}(x_i) for the Gaussian kernel density estimate that leaves
/// observation i out.
[[nodiscard]] double loo_log_likelihood(std::span<const double> x, double bandwidth);

/// Sum of loo_log_likelihood over a model's structural residuals, each with
/// its own Silverman bandwidth.
[[nodiscard]] double residual_log_likelihood(const std::vector<std::vector<double>>& residuals);

/// LR = 2 (l_unrestricted - l_restricted), floored at 0, chi-square(1)
/// reference. Both models share the DirectLiNGAM ordering; the restricted one
/// fixes alpha_zy = 0.
[[nodiscard]] TestOutcome likelihood_ratio_test(const Dataset& data, double alpha = 0.05);

/// HSIC permutation test between the instrument and the residual of the
/// outcome regressed on the treatment. Needs R >= 99.
[[nodiscard]] TestOutcome hsic_exclusion_test(const Dataset& data, std::size_t R, const RandomSource& rng,
                                              double alpha = 0.05);

/// Five-test ordering used in tables and verdicts.
[[nodiscard]] const std::vector<TestKind>& exclusion_tests();

struct ExclusionConfig {
    double alpha = 0.05;
    std::size_t bootstrap = 1000;     ///< B
    std::size_t permutations = 1000;  ///< R, for both the permutation and the HSIC test
    std::vector<TestKind> tests = exclusion_tests();
    friend bool operator==(const ExclusionConfig&, const ExclusionConfig&) = default;
};

/// Throws InvalidArgument for alpha outside (0, 1), B or R below 99, or a
/// test list that is empty, repeats a test, or names a non-exclusion test.
void validate(const ExclusionConfig& config);

enum class VerdictLabel { ConsensusNonRejection, MixedEvidence, StrongViolation };

/// "Consensus NonRejection", "Mixed Evidence", "Strong Violation".
[[nodiscard]] std::string_view to_string(VerdictLabel label) noexcept;
[[nodiscard]] std::optional<VerdictLabel> parse_verdict_label(std::string_view text) noexcept;

/// None rejecting: consensus; at least 4/5 of the tests (4 or 5 of five):
/// strong violation; otherwise mixed.
[[nodiscard]] VerdictLabel verdict_label(std::size_t rejections, std::size_t tests);

struct ExclusionVerdict {
    /// One per configured test, in configuration order. A test that failed
    /// has no p-value, decision NonReject, flag "error" and the message in
    /// its notes.
    std::vector<TestOutcome> outcomes;
    double alpha_zy_hat = 0.0;
    bool ordering_consistent = false;
    std::size_t rejections = 0;
    VerdictLabel label = VerdictLabel::ConsensusNonRejection;

    [[nodiscard]] const TestOutcome* find(TestKind kind) const noexcept;
    friend bool operator==(const ExclusionVerdict&, const ExclusionVerdict&) = default;
};

/// Runs the configured tests; the bootstrap and asymptotic tests share one set
/// of replicates. Each test draws from its own child of rng, so dropping a
/// test does not change the others.
[[nodiscard]] ExclusionVerdict run_all(const Dataset& data, const ExclusionConfig& config, const RandomSource& rng);

}  // namespace ivlingam
