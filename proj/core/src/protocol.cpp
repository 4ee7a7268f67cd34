#include "ivlingam/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "ivlingam/error.hpp"
#include "ivlingam/lingam.hpp"
#include "ivlingam/regress.hpp"

namespace ivlingam {

namespace {

void warn(ProtocolReport& report, int step, std::string_view code, std::string message) {
    report.warnings.push_back({step, std::string(code), std::move(message)});
}

ModelSummary summarize(const CausalModel& model) {
    ModelSummary s;
    for (std::size_t v : model.order) s.order.push_back(model.names[v]);
    const IvEffects e = model.iv_effects();
    s.alpha_zx = e.alpha_zx;
    s.alpha_xy = e.alpha_xy;
    s.alpha_zy = e.alpha_zy;
    s.consistent_with_iv = e.consistent;
    return s;
}

}  // namespace

bool ProtocolReport::has_warning(std::string_view code) const noexcept {
    return std::any_of(warnings.begin(), warnings.end(), [&](const ProtocolWarning& w) { return w.code == code; });
}

ProtocolReport run_protocol(const Dataset& data, const ProtocolConfig& config, const RandomSource& rng) {
    if (data.instrument_count() != 1)
        throw Error(ErrorCode::InvalidArgument, "the protocol needs exactly one instrument; use the multi-instrument run");
    validate(config.exclusion);
    const Dataset system = data.role_columns();
    const double alpha = config.exclusion.alpha;
    ProtocolReport report;

    report.step1 = nongaussianity_report(system, alpha);
    if (!report.step1.satisfied)
        warn(report, 1, warning::kNongaussianityNotEstablished,
             "no role column rejects normality; LiNGAM identification is doubtful");

    report.step2 = first_stage_f(system, alpha);
    const bool weak = report.step2.payload.flag == "weak";
    if (weak)
        warn(report, 2, warning::kWeakInstrument, "first-stage F below 10; the estimated ordering may be unreliable");

    report.step3 = exogeneity_check(system, config.exogeneity_permutations, rng, alpha).front();
    if (weak) warn(report, 3, warning::kWeakInstrument, "exogeneity check under a weak instrument");
    if (report.step3.rejected())
        warn(report, 3, warning::kExogeneityRejected, "instrument depends on the first-stage residual");

    report.step4 = summarize(direct_lingam(system));
    if (weak) warn(report, 4, warning::kWeakInstrument, "structure estimated under a weak instrument");
    if (!report.step4.consistent_with_iv)
        warn(report, 4, warning::kOrderingInconsistent,
             "estimated ordering does not put the instrument before the treatment before the outcome");

    report.step5 = run_all(system, config.exclusion, rng);
    if (weak) warn(report, 5, warning::kWeakInstrument, "exclusion tests under a weak instrument");
    for (const auto& o : report.step5.outcomes) {
        if (!o.p_value) warn(report, 5, warning::kTestFailed, std::string(to_string(o.test)) + " did not complete");
    }

    const OlsFit iv = tsls(system);
    report.step6.lingam_alpha_xy = report.step4.alpha_xy;
    report.step6.tsls_beta = iv.coefficients.front();
    report.step6.tsls_se = iv.se.front();
    report.step6.gap = std::abs(report.step6.lingam_alpha_xy - report.step6.tsls_beta);
    if (weak) warn(report, 6, warning::kWeakInstrument, "2SLS comparison under a weak instrument");
    return report;
}

std::string_view to_string(MultiIvLabel label) noexcept {
    switch (label) {
        case MultiIvLabel::Validated: return "Validated";
        case MultiIvLabel::MixedValidation: return "Mixed Validation";
        case MultiIvLabel::MixedEvidence: return "Mixed Evidence";
        case MultiIvLabel::StrongViolation: return "Strong Violation";
    }
    return "Unknown";
}

std::optional<MultiIvLabel> parse_multi_iv_label(std::string_view text) noexcept {
    for (auto l : {MultiIvLabel::Validated, MultiIvLabel::MixedValidation, MultiIvLabel::MixedEvidence,
                   MultiIvLabel::StrongViolation}) {
        if (to_string(l) == text) return l;
    }
    return std::nullopt;
}

const std::vector<TestKind>& multi_iv_tests() {
    static const std::vector<TestKind> kinds{TestKind::BootstrapPercentile, TestKind::LikelihoodRatio,
                                             TestKind::HSIC};
    return kinds;
}

MultiIvLabel multi_iv_label(const std::vector<InstrumentResult>& instruments) {
    bool all_strong = !instruments.empty();
    bool any = false;
    bool only_hsic = true;
    for (const auto& inst : instruments) {
        const std::size_t tests = inst.outcomes.size();
        all_strong = all_strong && tests > 0 && 3 * inst.rejections >= 2 * tests;
        for (const auto& o : inst.outcomes) {
            if (!o.rejected()) continue;
            any = true;
            only_hsic = only_hsic && o.test == TestKind::HSIC;
        }
    }
    if (all_strong) return MultiIvLabel::StrongViolation;
    if (!any) return MultiIvLabel::Validated;
    if (only_hsic) return MultiIvLabel::MixedValidation;
    return MultiIvLabel::MixedEvidence;
}

MultiIvReport run_multi_instrument(const Dataset& data, double alpha, const ExclusionConfig& config,
                                   const RandomSource& rng) {
    const std::size_t k = data.instrument_count();
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "the multi-instrument run needs at least two instruments");
    MultiIvReport report;
    report.k = k;
    report.alpha = alpha;
    report.alpha_adj = alpha / static_cast<double>(k);
    ExclusionConfig adjusted = config;
    adjusted.alpha = report.alpha_adj;
    validate(adjusted);

    for (std::size_t i = 0; i < k; ++i) {
        InstrumentResult result;
        result.instrument = data.instrument(i).name;
        try {
            const ExclusionVerdict v = run_all(data.iv_system(i), adjusted, rng.derive("instrument", i));
            result.alpha_zy_hat = v.alpha_zy_hat;
            result.ordering_consistent = v.ordering_consistent;
            result.outcomes = v.outcomes;
            result.rejections = v.rejections;
        } catch (const Error& e) {
            result.error = std::string(to_string(e.code())) + ": " + e.what();
        }
        report.instruments.push_back(std::move(result));
    }
    report.label = multi_iv_label(report.instruments);
    return report;
}

}  // namespace ivlingam
