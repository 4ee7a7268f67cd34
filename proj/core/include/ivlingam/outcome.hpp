#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ivlingam {

enum class TestKind {
    BootstrapPercentile,
    AsymptoticNormal,
    Permutation,
    LikelihoodRatio,
    HSIC,
    JarqueBera,
    ShapiroWilk,
    FirstStageF,
};

enum class Decision { Reject, NonReject };

[[nodiscard]] std::string_view to_string(TestKind kind) noexcept;
[[nodiscard]] std::optional<TestKind> parse_test_kind(std::string_view text) noexcept;
[[nodiscard]] std::string_view to_string(Decision d) noexcept;
/// "R" / "NR", the vocabulary of the printed tables.
[[nodiscard]] std::string_view short_label(Decision d) noexcept;

/// Test-specific extras. Every field is optional; each test fills what it has.
struct OutcomePayload {
    std::optional<std::string> variable;     ///< column the test was applied to
    std::optional<double> estimate;          ///< point estimate under test (alpha_zy hat)
    std::optional<double> ci_lower;
    std::optional<double> ci_upper;
    std::optional<double> se;
    std::optional<double> df1;
    std::optional<double> df2;
    std::optional<std::size_t> resamples;    ///< B or R requested
    std::optional<std::size_t> used;         ///< resamples entering the reference distribution
    std::optional<std::size_t> dropped;      ///< resamples excluded (ordering flips, failures)
    std::optional<std::string> flag;         ///< e.g. "strong" / "weak"
    std::vector<std::string> notes;

    friend bool operator==(const OutcomePayload&, const OutcomePayload&) = default;
};

struct TestOutcome {
    TestKind test = TestKind::JarqueBera;
    double statistic = 0.0;
    std::optional<double> p_value;
    Decision decision = Decision::NonReject;
    double alpha = 0.05;
    OutcomePayload payload;

    [[nodiscard]] bool rejected() const noexcept { return decision == Decision::Reject; }

    friend bool operator==(const TestOutcome&, const TestOutcome&) = default;
};

/// Reject iff p < alpha.
[[nodiscard]] Decision decide(double p_value, double alpha) noexcept;

}  // namespace ivlingam
