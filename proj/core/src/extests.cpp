#include "ivlingam/extests.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "distributions.hpp"
#include "gram_kernels.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/hsic.hpp"
#include "ivlingam/lingam.hpp"
#include "ivlingam/parallel.hpp"
#include "ivlingam/regress.hpp"

namespace ivlingam {

namespace {

constexpr double kNegativeLrDiagnostic = -1e-6;

Dataset single_iv_system(const Dataset& data) {
    if (data.instrument_count() != 1)
        throw Error(ErrorCode::InvalidArgument,
                    "exclusion tests need exactly one instrument; analyse each instrument's own system");
    return data.role_columns();
}

std::size_t instrument_column(const Dataset& system) { return system.instrument_indices().front(); }

bool at_least(double candidate, double observed) {
    return candidate >= observed - kPermutationTieTolerance * std::max(1e-300, std::abs(observed));
}

double sample_sd(const std::vector<double>& x) {
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

void require_resamples(std::size_t count, const char* what) {
    if (count < 99) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs at least 99 resamples");
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
}

double estimate_alpha_zy(const Dataset& system, bool* consistent = nullptr) {
    const IvEffects e = direct_lingam(system).iv_effects();
    if (consistent) *consistent = e.consistent;
    return e.alpha_zy;
}

const BootstrapReplicates& require_kept(const BootstrapReplicates& reps) {
    if (reps.alpha_zy.size() < 2)
        throw Error(ErrorCode::DegenerateInput,
                    "fewer than two bootstrap replicates kept the instrument -> treatment -> outcome ordering");
    return reps;
}

void describe_replicates(const BootstrapReplicates& reps, OutcomePayload& payload) {
    payload.resamples = reps.requested;
    payload.used = reps.alpha_zy.size();
    payload.dropped = reps.dropped();
    if (reps.inconsistent > 0)
        payload.notes.push_back(std::to_string(reps.inconsistent) + " replicates with an ordering inconsistent with IV dropped");
    if (reps.failed > 0) payload.notes.push_back(std::to_string(reps.failed) + " replicates failed to fit and were dropped");
}

TestOutcome hsic_exclusion(const Dataset& system, std::size_t R, const RandomSource& rng, double alpha,
                           double alpha_zy_hat) {
    require_resamples(R, "the HSIC test");
    const OlsFit yx = ols(system.outcome().values, {system.treatment().values});
    const Column& z = system.instrument();
    const HsicResult h = hsic_test(z.values, yx.residuals, R, rng);
    TestOutcome o;
    o.test = TestKind::HSIC;
    o.statistic = h.statistic;
    o.p_value = h.permutation_p;
    o.alpha = alpha;
    o.decision = decide(h.permutation_p, alpha);
    o.payload.variable = z.name;
    o.payload.estimate = alpha_zy_hat;
    o.payload.resamples = R;
    o.payload.used = h.permutations_used;
    o.payload.notes.push_back("HSIC also reacts to nonlinear or heteroskedastic dependence; read it with alpha_zy_hat");
    return o;
}

TestOutcome failed_outcome(TestKind kind, double alpha, const std::string& message) {
    TestOutcome o;
    o.test = kind;
    o.alpha = alpha;
    o.payload.flag = "error";
    o.payload.notes.push_back(message);
    return o;
}

}  // namespace

BootstrapReplicates bootstrap_replicates(const Dataset& data, std::size_t B, const RandomSource& rng) {
    require_resamples(B, "the bootstrap");
    const Dataset system = single_iv_system(data);
    enum Status : char { Kept, Inconsistent, Failed };
    std::vector<double> values(B, 0.0);
    std::vector<char> status(B, Failed);
    parallel_for(B, [&](std::size_t b) {
        Engine engine = rng.stream("bootstrap", b);
        const auto rows = bootstrap_indices(system.rows(), engine);
        try {
            const IvEffects e = direct_lingam(system.with_rows(rows)).iv_effects();
            values[b] = e.alpha_zy;
            status[b] = e.consistent ? Kept : Inconsistent;
        } catch (const Error&) {
            status[b] = Failed;
        }
    });
    BootstrapReplicates reps;
    reps.requested = B;
    for (std::size_t b = 0; b < B; ++b) {
        if (status[b] == Kept) reps.alpha_zy.push_back(values[b]);
        if (status[b] == Inconsistent) ++reps.inconsistent;
        if (status[b] == Failed) ++reps.failed;
    }
    return reps;
}

TestOutcome bootstrap_percentile_test(double alpha_zy_hat, const BootstrapReplicates& reps, double alpha) {
    require_alpha(alpha);
    std::vector<double> sorted = require_kept(reps).alpha_zy;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    // j-th smallest and j-th largest with j = ceil(m alpha / 2): 0 falls
    // outside [lower, upper] exactly when min(#{<= 0}, #{>= 0}) < m alpha / 2
    const auto j = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(m) * alpha / 2.0)));
    const double lower = sorted[j - 1];
    const double upper = sorted[m - j];
    const auto at_most_zero = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), 0.0) - sorted.begin());
    const auto at_least_zero = static_cast<double>(sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), 0.0));
    const double md = static_cast<double>(m);
    const double p = std::clamp(2.0 * std::min(at_most_zero, at_least_zero) / md, 1.0 / (md + 1.0), 1.0);

    TestOutcome o;
    o.test = TestKind::BootstrapPercentile;
    o.statistic = alpha_zy_hat;
    o.p_value = p;
    o.alpha = alpha;
    o.decision = (0.0 < lower || 0.0 > upper) ? Decision::Reject : Decision::NonReject;
    o.payload.estimate = alpha_zy_hat;
    o.payload.ci_lower = lower;
    o.payload.ci_upper = upper;
    o.payload.se = sample_sd(sorted);
    describe_replicates(reps, o.payload);
    return o;
}

TestOutcome bootstrap_percentile_test(const Dataset& data, std::size_t B, double alpha, const RandomSource& rng) {
    require_alpha(alpha);
    const Dataset system = single_iv_system(data);
    return bootstrap_percentile_test(estimate_alpha_zy(system), bootstrap_replicates(system, B, rng), alpha);
}

TestOutcome asymptotic_normal_test(double alpha_zy_hat, const BootstrapReplicates& reps, double alpha) {
    require_alpha(alpha);
    const auto& kept = require_kept(reps).alpha_zy;
    const auto [lo, hi] = std::minmax_element(kept.begin(), kept.end());
    if (*lo == *hi) throw Error(ErrorCode::ZeroBootstrapSpread, "all bootstrap replicates are identical");
    const double se = sample_sd(kept);
    const double w = alpha_zy_hat / se;
    const double p = std::min(1.0, 2.0 * detail::normal_sf(std::abs(w)));

    TestOutcome o;
    o.test = TestKind::AsymptoticNormal;
    o.statistic = w;
    o.p_value = p;
    o.alpha = alpha;
    o.decision = decide(p, alpha);
    o.payload.estimate = alpha_zy_hat;
    o.payload.se = se;
    describe_replicates(reps, o.payload);
    return o;
}

TestOutcome asymptotic_normal_test(const Dataset& data, std::size_t B, const RandomSource& rng, double alpha) {
    require_alpha(alpha);
    const Dataset system = single_iv_system(data);
    return asymptotic_normal_test(estimate_alpha_zy(system), bootstrap_replicates(system, B, rng), alpha);
}

TestOutcome permutation_test(const Dataset& data, std::size_t R, const RandomSource& rng, double alpha) {
    require_alpha(alpha);
    require_resamples(R, "the permutation test");
    const Dataset system = single_iv_system(data);
    const std::size_t zc = instrument_column(system);
    const double estimate = estimate_alpha_zy(system);
    const double observed = std::abs(estimate);
    const auto& z = system.column(zc).values;

    enum Status : char { Below, AtLeast, Failed };
    std::vector<char> status(R, Failed);
    parallel_for(R, [&](std::size_t r) {
        Engine engine = rng.stream("permutation", r);
        const auto perm = random_permutation(z.size(), engine);
        std::vector<double> shuffled(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) shuffled[i] = z[perm[i]];
        try {
            const double a = std::abs(direct_lingam(system.with_values(zc, std::move(shuffled))).iv_effects().alpha_zy);
            status[r] = at_least(a, observed) ? AtLeast : Below;
        } catch (const Error&) {
            status[r] = Failed;
        }
    });
    const auto exceed = static_cast<std::size_t>(std::count(status.begin(), status.end(), AtLeast));
    const auto failed = static_cast<std::size_t>(std::count(status.begin(), status.end(), Failed));
    const std::size_t used = R - failed;
    const double p = (1.0 + static_cast<double>(exceed)) / (static_cast<double>(used) + 1.0);

    TestOutcome o;
    o.test = TestKind::Permutation;
    o.statistic = observed;
    o.p_value = p;
    o.alpha = alpha;
    o.decision = decide(p, alpha);
    o.payload.variable = system.column(zc).name;
    o.payload.estimate = estimate;
    o.payload.resamples = R;
    o.payload.used = used;
    o.payload.dropped = failed;
    if (failed > 0) o.payload.notes.push_back(std::to_string(failed) + " permuted refits failed and were dropped");
    return o;
}

TestOutcome permutation_test_exhaustive(const Dataset& data, double alpha) {
    require_alpha(alpha);
    const Dataset system = single_iv_system(data);
    if (system.rows() > kMaxExhaustiveSize)
        throw Error(ErrorCode::NotSupported, "exhaustive enumeration is limited to n <= 9");
    const std::size_t zc = instrument_column(system);
    const double estimate = estimate_alpha_zy(system);
    const double observed = std::abs(estimate);
    const auto& z = system.column(zc).values;

    std::vector<std::size_t> perm(z.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t total = 0;
    std::size_t exceed = 0;
    do {
        std::vector<double> shuffled(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) shuffled[i] = z[perm[i]];
        const double a = std::abs(direct_lingam(system.with_values(zc, std::move(shuffled))).iv_effects().alpha_zy);
        ++total;
        if (at_least(a, observed)) ++exceed;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double p = static_cast<double>(exceed) / static_cast<double>(total);

    TestOutcome o;
    o.test = TestKind::Permutation;
    o.statistic = observed;
    o.p_value = p;
    o.alpha = alpha;
    o.decision = decide(p, alpha);
    o.payload.variable = system.column(zc).name;
    o.payload.estimate = estimate;
    o.payload.resamples = total;
    o.payload.used = total;
    o.payload.flag = "exhaustive";
    return o;
}

double silverman_bandwidth(std::span<const double> x) {
    if (x.size() < 2) throw Error(ErrorCode::BandwidthDegenerate, "a bandwidth needs at least two points");
    const double sd = std::sqrt(sample_variance(x));
    if (!(sd > 0.0) || !std::isfinite(sd))
        throw Error(ErrorCode::BandwidthDegenerate, "residuals are constant; no kernel bandwidth");
    return sd * std::pow(4.0 / (3.0 * static_cast<double>(x.size())), 0.2);
}

double loo_log_likelihood(std::span<const double> x, double bandwidth) {
    if (x.size() < 2) throw Error(ErrorCode::TooFewObservations, "leave-one-out density needs at least two points");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw Error(ErrorCode::BandwidthDegenerate, "kernel bandwidth must be positive");
    return detail::loo_kde_loglik(x.data(), x.size(), bandwidth);
}

double residual_log_likelihood(const std::vector<std::vector<double>>& residuals) {
    double total = 0.0;
    for (const auto& r : residuals) total += loo_log_likelihood(r, silverman_bandwidth(r));
    return total;
}

TestOutcome likelihood_ratio_test(const Dataset& data, double alpha) {
    require_alpha(alpha);
    const Dataset system = single_iv_system(data);
    const CausalModel unrestricted = direct_lingam(system);
    const CausalModel restricted = fit_ordered(system, unrestricted.order, true);
    const double raw = 2.0 * (residual_log_likelihood(unrestricted.residuals) -
                              residual_log_likelihood(restricted.residuals));
    const double lr = std::max(0.0, raw);
    const double p = detail::chi_squared_sf(lr, 1.0);

    TestOutcome o;
    o.test = TestKind::LikelihoodRatio;
    o.statistic = lr;
    o.p_value = p;
    o.alpha = alpha;
    o.decision = decide(p, alpha);
    o.payload.estimate = unrestricted.iv_effects().alpha_zy;
    o.payload.df1 = 1.0;
    if (raw < kNegativeLrDiagnostic)
        o.payload.notes.push_back("raw LR " + std::to_string(raw) + " was negative and floored at 0");
    if (!unrestricted.consistent_with_iv)
        o.payload.notes.push_back("estimated ordering is inconsistent with IV");
    return o;
}

TestOutcome hsic_exclusion_test(const Dataset& data, std::size_t R, const RandomSource& rng, double alpha) {
    require_alpha(alpha);
    const Dataset system = single_iv_system(data);
    return hsic_exclusion(system, R, rng, alpha, estimate_alpha_zy(system));
}

const std::vector<TestKind>& exclusion_tests() {
    static const std::vector<TestKind> kinds{TestKind::BootstrapPercentile, TestKind::AsymptoticNormal,
                                             TestKind::Permutation, TestKind::LikelihoodRatio, TestKind::HSIC};
    return kinds;
}

void validate(const ExclusionConfig& config) {
    require_alpha(config.alpha);
    require_resamples(config.bootstrap, "the bootstrap");
    require_resamples(config.permutations, "a permutation test");
    if (config.tests.empty()) throw Error(ErrorCode::InvalidArgument, "no exclusion test selected");
    const auto& known = exclusion_tests();
    for (std::size_t i = 0; i < config.tests.size(); ++i) {
        const TestKind k = config.tests[i];
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw Error(ErrorCode::InvalidArgument, std::string(to_string(k)) + " is not an exclusion test");
        if (std::find(config.tests.begin(), config.tests.begin() + static_cast<std::ptrdiff_t>(i), k) !=
            config.tests.begin() + static_cast<std::ptrdiff_t>(i))
            throw Error(ErrorCode::InvalidArgument, std::string(to_string(k)) + " is listed twice");
    }
}

std::string_view to_string(VerdictLabel label) noexcept {
    switch (label) {
        case VerdictLabel::ConsensusNonRejection: return "Consensus NonRejection";
        case VerdictLabel::MixedEvidence: return "Mixed Evidence";
        case VerdictLabel::StrongViolation: return "Strong Violation";
    }
    return "Unknown";
}

std::optional<VerdictLabel> parse_verdict_label(std::string_view text) noexcept {
    for (auto l : {VerdictLabel::ConsensusNonRejection, VerdictLabel::MixedEvidence, VerdictLabel::StrongViolation}) {
        if (to_string(l) == text) return l;
    }
    return std::nullopt;
}

VerdictLabel verdict_label(std::size_t rejections, std::size_t tests) {
    if (tests == 0 || rejections > tests) throw Error(ErrorCode::InvalidArgument, "rejections must lie in [0, tests]");
    if (rejections == 0) return VerdictLabel::ConsensusNonRejection;
    // 4 of 5 and above
    if (5 * rejections >= 4 * tests) return VerdictLabel::StrongViolation;
    return VerdictLabel::MixedEvidence;
}

const TestOutcome* ExclusionVerdict::find(TestKind kind) const noexcept {
    for (const auto& o : outcomes) {
        if (o.test == kind) return &o;
    }
    return nullptr;
}

ExclusionVerdict run_all(const Dataset& data, const ExclusionConfig& config, const RandomSource& rng) {
    validate(config);
    const Dataset system = single_iv_system(data);
    ExclusionVerdict verdict;
    verdict.alpha_zy_hat = estimate_alpha_zy(system, &verdict.ordering_consistent);
    const double a = verdict.alpha_zy_hat;

    const auto wants = [&](TestKind k) {
        return std::find(config.tests.begin(), config.tests.end(), k) != config.tests.end();
    };
    std::optional<BootstrapReplicates> reps;
    std::string reps_error;
    if (wants(TestKind::BootstrapPercentile) || wants(TestKind::AsymptoticNormal)) {
        try {
            reps = bootstrap_replicates(system, config.bootstrap, rng);
        } catch (const Error& e) {
            reps_error = e.what();
        }
    }

    for (TestKind kind : config.tests) {
        try {
            switch (kind) {
                case TestKind::BootstrapPercentile:
                    if (!reps) throw Error(ErrorCode::DegenerateInput, reps_error);
                    verdict.outcomes.push_back(bootstrap_percentile_test(a, *reps, config.alpha));
                    break;
                case TestKind::AsymptoticNormal:
                    if (!reps) throw Error(ErrorCode::DegenerateInput, reps_error);
                    verdict.outcomes.push_back(asymptotic_normal_test(a, *reps, config.alpha));
                    break;
                case TestKind::Permutation:
                    verdict.outcomes.push_back(permutation_test(system, config.permutations, rng, config.alpha));
                    break;
                case TestKind::LikelihoodRatio:
                    verdict.outcomes.push_back(likelihood_ratio_test(system, config.alpha));
                    break;
                case TestKind::HSIC:
                    verdict.outcomes.push_back(hsic_exclusion(system, config.permutations, rng, config.alpha, a));
                    break;
                default: break;
            }
        } catch (const Error& e) {
            verdict.outcomes.push_back(failed_outcome(kind, config.alpha, std::string(to_string(e.code())) + ": " + e.what()));
        }
    }
    verdict.rejections = static_cast<std::size_t>(
        std::count_if(verdict.outcomes.begin(), verdict.outcomes.end(), [](const TestOutcome& o) { return o.rejected(); }));
    verdict.label = verdict_label(verdict.rejections, verdict.outcomes.size());
    return verdict;
}

}  // namespace ivlingam
