#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "helpers.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/extests.hpp"
#include "ivlingam/hsic.hpp"
#include "ivlingam/lingam.hpp"
#include "ivlingam/parallel.hpp"
#include "ivlingam/simulate.hpp"
#include "oracles.hpp"

using namespace ivlingam;

namespace {

/// Structural draws without the simulator's minimum size.
Dataset tiny(std::uint64_t seed, double alpha_zy, std::size_t n) {
    SimulationSpec spec;
    Engine e(seed);
    const auto z = draw_errors(spec, n, e);
    auto x = draw_errors(spec, n, e);
    auto y = draw_errors(spec, n, e);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] += spec.alpha_zx * z[i];
        y[i] += spec.alpha_xy * x[i] + alpha_zy * z[i];
    }
    return testing::iv_dataset(z, x, y);
}

Dataset dgp(std::uint64_t seed, double alpha_zy, std::size_t n = 500) {
    SimulationSpec spec;
    spec.n = n;
    spec.alpha_zy = alpha_zy;
    return generate(spec, RandomSource(seed));
}

ExclusionConfig small_config() {
    ExclusionConfig c;
    c.bootstrap = 199;
    c.permutations = 199;
    return c;
}

void check_outcome_invariants(const TestOutcome& o) {
    if (!o.p_value) return;
    CHECK(*o.p_value >= 0.0);
    CHECK(*o.p_value <= 1.0);
    if (o.test != TestKind::BootstrapPercentile) CHECK(o.rejected() == (*o.p_value < o.alpha));
}

}  // namespace

TEST_CASE("exhaustive permutation p-value equals the enumeration oracle") {
    for (std::size_t n : {6u, 7u}) {
        for (std::uint64_t s = 0; s < 2; ++s) {
            const Dataset d = tiny(40 + s, s ? 0.8 : 0.0, n);
            const auto& z = d.instrument().values;
            auto stat = [&](const std::vector<double>& zz) {
                return std::abs(direct_lingam(d.with_values(0, zz)).iv_effects().alpha_zy);
            };
            const double expected = oracle::exhaustive_p(z, stat, kPermutationTieTolerance);
            const TestOutcome o = permutation_test_exhaustive(d);
            REQUIRE(o.p_value);
            CHECK(*o.p_value == expected);
            CHECK(o.payload.resamples == (n == 6 ? 720u : 5040u));
            CHECK(o.payload.flag == "exhaustive");
        }
    }
}

TEST_CASE("bootstrap percentile decision agrees with its interval and p-value") {
    for (std::uint64_t s = 0; s < 6; ++s) {
        const Dataset d = dgp(s, 0.1 * static_cast<double>(s), 300);
        const TestOutcome o = bootstrap_percentile_test(d, 199, 0.05, RandomSource(s));
        REQUIRE(o.payload.ci_lower);
        REQUIRE(o.payload.ci_upper);
        CHECK(*o.payload.ci_lower <= *o.payload.ci_upper);
        const bool outside = *o.payload.ci_lower > 0.0 || *o.payload.ci_upper < 0.0;
        CHECK(o.rejected() == outside);
        CHECK(o.rejected() == (*o.p_value < 0.05));
        CHECK(*o.payload.used + *o.payload.dropped == 199);
    }
}

TEST_CASE("bootstrap percentile from synthetic replicates") {
    BootstrapReplicates reps;
    reps.requested = 100;
    for (int i = 1; i <= 100; ++i) reps.alpha_zy.push_back(0.01 * i);  // all positive
    const TestOutcome o = bootstrap_percentile_test(0.5, reps, 0.05);
    CHECK(o.rejected());
    CHECK(*o.payload.ci_lower == doctest::Approx(0.03));  // j = ceil(100 * 0.025) = 3
    CHECK(*o.payload.ci_upper == doctest::Approx(0.98));
    CHECK(*o.p_value == doctest::Approx(1.0 / 101));
}

TEST_CASE("asymptotic normal test uses the bootstrap standard deviation") {
    BootstrapReplicates reps;
    reps.requested = 4;
    reps.alpha_zy = {0.1, 0.2, 0.3, 0.4};
    const double sd = std::sqrt((0.0225 + 0.0025 + 0.0025 + 0.0225) / 3.0);
    const TestOutcome o = asymptotic_normal_test(0.25, reps);
    CHECK(o.statistic == doctest::Approx(0.25 / sd));
    CHECK(*o.p_value == doctest::Approx(std::erfc(0.25 / sd / std::numbers::sqrt2)));

    reps.alpha_zy = {0.2, 0.2, 0.2, 0.2};
    CHECK_THROWS_AS((void)asymptotic_normal_test(0.25, reps), Error);
}

TEST_CASE("silverman bandwidth and leave-one-out likelihood against direct formulas") {
    const std::vector<double> x{0.3, -1.2, 2.5, 0.1, 0.9, -0.7, 1.4};
    const double n = x.size();
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0;
    for (double v : x) ss += (v - m) * (v - m);
    const double h = std::pow(4.0 / (3.0 * n), 0.2) * std::sqrt(ss / (n - 1));
    CHECK(silverman_bandwidth(x) == doctest::Approx(h).epsilon(1e-12));

    double ll = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double f = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (j != i) f += std::exp(-0.5 * std::pow((x[i] - x[j]) / h, 2)) / (h * std::sqrt(2 * std::numbers::pi));
        ll += std::log(f / (n - 1));
    }
    CHECK(loo_log_likelihood(x, h) == doctest::Approx(ll).epsilon(1e-12));
    CHECK_THROWS_AS((void)silverman_bandwidth(std::vector<double>(5, 1.0)), Error);
}

TEST_CASE("likelihood ratio statistic is non-negative and large under violation") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const TestOutcome valid = likelihood_ratio_test(dgp(s, 0.0));
        CHECK(valid.statistic >= 0.0);
        check_outcome_invariants(valid);
        CHECK(likelihood_ratio_test(dgp(s, 0.5)).rejected());
    }
}

TEST_CASE("violation DGP gives a strong violation verdict") {
    const ExclusionVerdict v = run_all(dgp(3, 0.5), small_config(), RandomSource(3));
    REQUIRE(v.outcomes.size() == 5);
    CHECK(v.rejections == 5);
    CHECK(v.label == VerdictLabel::StrongViolation);
    for (const auto& o : v.outcomes) check_outcome_invariants(o);
    CHECK(v.find(TestKind::HSIC) != nullptr);
    CHECK(v.find(TestKind::JarqueBera) == nullptr);
}

TEST_CASE("run_all is deterministic and thread-count independent") {
    const Dataset d = dgp(9, 0.2, 300);
    set_thread_limit(1);
    const ExclusionVerdict a = run_all(d, small_config(), RandomSource(21));
    set_thread_limit(4);
    const ExclusionVerdict b = run_all(d, small_config(), RandomSource(21));
    set_thread_limit(0);
    CHECK(a == b);
    CHECK(!(a == run_all(d, small_config(), RandomSource(22))));
}

TEST_CASE("dropping a test leaves the others unchanged") {
    const Dataset d = dgp(5, 0.2, 300);
    const ExclusionVerdict all = run_all(d, small_config(), RandomSource(1));
    ExclusionConfig some = small_config();
    some.tests = {TestKind::HSIC, TestKind::Permutation};
    const ExclusionVerdict part = run_all(d, some, RandomSource(1));
    REQUIRE(part.outcomes.size() == 2);
    CHECK(part.outcomes[0] == *all.find(TestKind::HSIC));
    CHECK(part.outcomes[1] == *all.find(TestKind::Permutation));
}

TEST_CASE("verdict labels") {
    CHECK(verdict_label(0, 5) == VerdictLabel::ConsensusNonRejection);
    CHECK(verdict_label(1, 5) == VerdictLabel::MixedEvidence);
    CHECK(verdict_label(3, 5) == VerdictLabel::MixedEvidence);
    CHECK(verdict_label(4, 5) == VerdictLabel::StrongViolation);
    CHECK(verdict_label(5, 5) == VerdictLabel::StrongViolation);
    for (auto l : {VerdictLabel::ConsensusNonRejection, VerdictLabel::MixedEvidence, VerdictLabel::StrongViolation})
        CHECK(parse_verdict_label(to_string(l)) == l);
}

TEST_CASE("configuration validation") {
    ExclusionConfig c;
    CHECK_NOTHROW(validate(c));
    c.alpha = 0.0;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.bootstrap = 50;
    CHECK_THROWS_AS(validate(c), Error);
    c = {};
    c.tests = {TestKind::HSIC, TestKind::HSIC};
    CHECK_THROWS_AS(validate(c), Error);
    c.tests = {TestKind::JarqueBera};
    CHECK_THROWS_AS(validate(c), Error);
    c.tests = {};
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("exclusion tests need exactly one instrument") {
    const Dataset two = generate_two_instruments(SimulationSpec{}, 0.0, 0.0, RandomSource(1));
    CHECK_THROWS_AS((void)likelihood_ratio_test(two), Error);
}
