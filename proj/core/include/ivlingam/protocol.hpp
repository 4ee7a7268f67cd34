#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivlingam/dataset.hpp"
#include "ivlingam/extests.hpp"
#include "ivlingam/normality.hpp"
#include "ivlingam/outcome.hpp"
#include "ivlingam/random.hpp"

namespace ivlingam {

/// Warning codes attached to protocol steps.
namespace warning {
inline constexpr std::string_view kNongaussianityNotEstablished = "NONGAUSSIANITY_NOT_ESTABLISHED";
inline constexpr std::string_view kWeakInstrument = "WEAK_INSTRUMENT";
inline constexpr std::string_view kExogeneityRejected = "EXOGENEITY_REJECTED";
inline constexpr std::string_view kOrderingInconsistent = "ORDERING_INCONSISTENT_WITH_IV";
inline constexpr std::string_view kTestFailed = "TEST_FAILED";
}  // namespace warning

struct ProtocolWarning {
    int step = 0;  ///< 1..6
    std::string code;
    std::string message;
    friend bool operator==(const ProtocolWarning&, const ProtocolWarning&) = default;
};

/// Step 4: the estimated structure, by variable name.
struct ModelSummary {
    std::vector<std::string> order;  ///< root first
    double alpha_zx = 0.0;
    double alpha_xy = 0.0;
    double alpha_zy = 0.0;
    bool consistent_with_iv = false;
    friend bool operator==(const ModelSummary&, const ModelSummary&) = default;
};

/// Step 6: LiNGAM treatment effect against 2SLS.
struct MethodComparison {
    double lingam_alpha_xy = 0.0;
    double tsls_beta = 0.0;
    double tsls_se = 0.0;
    double gap = 0.0;  ///< |lingam_alpha_xy - tsls_beta|
    friend bool operator==(const MethodComparison&, const MethodComparison&) = default;
};

struct ProtocolConfig {
    ExclusionConfig exclusion;
    std::size_t exogeneity_permutations = 1000;
    friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

struct ProtocolReport {
    NongaussianityReport step1;
    TestOutcome step2;  ///< first-stage F, flag "weak" or "strong"
    TestOutcome step3;  ///< HSIC of instrument vs first-stage residual
    ModelSummary step4;
    ExclusionVerdict step5;
    MethodComparison step6;
    std::vector<ProtocolWarning> warnings;  ///< in step order

    [[nodiscard]] bool has_warning(std::string_view code) const noexcept;
    friend bool operator==(const ProtocolReport&, const ProtocolReport&) = default;
};

/// Non-Gaussianity, first stage, exogeneity, structure, the exclusion tests and
/// the 2SLS comparison, in that order. Soft problems (Gaussian-looking data,
/// a weak instrument, a flipped ordering) become warnings and the run
/// continues; a weak instrument adds a warning to every step after the first
/// stage. Needs exactly one instrument.
[[nodiscard]] ProtocolReport run_protocol(const Dataset& data, const ProtocolConfig& config, const RandomSource& rng);

enum class MultiIvLabel { Validated, MixedValidation, MixedEvidence, StrongViolation };

/// "Validated", "Mixed Validation", "Mixed Evidence", "Strong Violation".
[[nodiscard]] std::string_view to_string(MultiIvLabel label) noexcept;
[[nodiscard]] std::optional<MultiIvLabel> parse_multi_iv_label(std::string_view text) noexcept;

struct InstrumentResult {
    std::string instrument;
    double alpha_zy_hat = 0.0;
    bool ordering_consistent = false;
    /// Decided at the Bonferroni level; empty when the analysis failed.
    std::vector<TestOutcome> outcomes;
    std::size_t rejections = 0;
    std::optional<std::string> error;
    friend bool operator==(const InstrumentResult&, const InstrumentResult&) = default;
};

struct MultiIvReport {
    std::size_t k = 0;
    double alpha = 0.05;
    double alpha_adj = 0.05;  ///< alpha / k
    std::vector<InstrumentResult> instruments;
    MultiIvLabel label = MultiIvLabel::Validated;
    friend bool operator==(const MultiIvReport&, const MultiIvReport&) = default;
};

/// Tests reported per instrument by default: bootstrap percentile,
/// likelihood ratio and HSIC.
[[nodiscard]] const std::vector<TestKind>& multi_iv_tests();

/// Label from per-instrument Bonferroni rejections: every instrument with at
/// least 2/3 of its tests rejecting gives StrongViolation; no rejection at all
/// gives Validated; rejections that are all HSIC give MixedValidation;
/// anything else is MixedEvidence.
[[nodiscard]] MultiIvLabel multi_iv_label(const std::vector<InstrumentResult>& instruments);

/// Runs the configured exclusion tests (config.tests, config.alpha ignored)
/// on each (Z_k, X, Y) system at alpha_adj = alpha / K. Instrument k draws
/// from rng.derive("instrument", k). A failing instrument is recorded and
/// the others still run. Needs K >= 2.
[[nodiscard]] MultiIvReport run_multi_instrument(const Dataset& data, double alpha, const ExclusionConfig& config,
                                                 const RandomSource& rng);

}  // namespace ivlingam
