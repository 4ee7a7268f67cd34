#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/normality.hpp"

using namespace ivlingam;

namespace {

// Reference values computed once with scipy.stats (jarque_bera, shapiro).
const std::vector<double> kHeavy = {
    -0.273517, -1.750794, -0.754508, -0.223257, 0.676999, -2.120279, 0.853658, -0.873089, 0.27619,  0.145057,
    0.753645,  -1.607349, -0.938927, -1.539905, -2.846262, -0.180829, -0.387248, -0.212246, 1.332558, -2.238032,
    0.186443,  -0.004317, 0.755447,  1.557778,  -0.06558,  -0.430026, 1.292028,  -0.274436, -0.824412, 3.04612,
    1.801807,  0.796026,  0.578799,  0.606712,  -0.976638, -0.975666, 0.825189,  -0.481983, -1.267832, -1.479821};
const std::vector<double> kNormal = {1.180756,  -0.18938,  -0.315153, -1.412544, -1.063788, 0.926532, -0.189466,
                                     -0.400887, 0.791898,  -0.90587,  1.613377,  -0.368215, -0.513043, -0.265165,
                                     0.037342,  0.701169,  -0.698836, -0.824027, 0.038157,  0.338946,  0.877255,
                                     -0.476753, 0.967012,  -1.019893, 1.385778};
const std::vector<double> kSkewed = {3.283331, 0.571062, 0.344438, 0.164824, 0.554152, 0.046079,
                                     0.143213, 1.405954, 1.392639, 0.083576, 1.685892, 0.231035};

}  // namespace

TEST_CASE("jarque-bera matches reference statistic and p-value") {
    struct Case {
        const std::vector<double>* x;
        double stat;
        double p;
    };
    for (const Case& c : {Case{&kHeavy, 0.16965063934574864, 0.9186727444419638},
                          Case{&kNormal, 1.3890141909026412, 0.4993205046869297},
                          Case{&kSkewed, 5.426360060646243, 0.06632555372554184}}) {
        const TestOutcome r = jarque_bera(*c.x);
        CHECK(r.test == TestKind::JarqueBera);
        CHECK(r.statistic == doctest::Approx(c.stat).epsilon(1e-10));
        REQUIRE(r.p_value);
        CHECK(*r.p_value == doctest::Approx(c.p).epsilon(1e-10));
        CHECK(r.decision == Decision::NonReject);
    }
}

TEST_CASE("shapiro-wilk matches reference W and p-value") {
    struct Case {
        const std::vector<double>* x;
        double w;
        double p;
    };
    for (const Case& c : {Case{&kHeavy, 0.9907783610939304, 0.9831563859841674},
                          Case{&kNormal, 0.9546354219091117, 0.3179922245309892},
                          Case{&kSkewed, 0.7856870433177081, 0.006470596100173095}}) {
        const TestOutcome r = shapiro_wilk(*c.x);
        CHECK(r.statistic == doctest::Approx(c.w).epsilon(1e-5));
        REQUIRE(r.p_value);
        CHECK(*r.p_value == doctest::Approx(c.p).epsilon(1e-3));
    }
    CHECK(shapiro_wilk(kSkewed).rejected());
}

TEST_CASE("moments of a symmetric sample") {
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const MomentSummary m = moments(x);
    CHECK(m.mean == doctest::Approx(5.5));
    CHECK(m.skewness == doctest::Approx(0.0).epsilon(1e-12));
    // uniform-like: kurtosis 1.7758 (population moments)
    CHECK(m.kurtosis == doctest::Approx(1.7757575757575757).epsilon(1e-12));
}

TEST_CASE("normality tests reject short or constant input") {
    CHECK_THROWS_AS((void)jarque_bera(std::vector<double>{1, 2, 3}), Error);
    CHECK_THROWS_AS((void)shapiro_wilk(std::vector<double>{1, 2}), Error);
    CHECK_THROWS_AS((void)shapiro_wilk(std::vector<double>(10, 1.0)), Error);
}

TEST_CASE("negentropy: two-point sample against closed form") {
    std::vector<double> x;
    for (int i = 0; i < 100; ++i) x.push_back(i % 2 ? 1.0 : -1.0);
    // u = +-1 exactly: E[u exp(-u^2/2)] = 0, E[exp(-u^2/2)] = exp(-1/2)
    const double k2 = 24.0 / (16.0 * std::sqrt(3.0) - 27.0);
    const double expected = k2 * std::pow(std::exp(-0.5) - std::sqrt(0.5), 2);
    CHECK(negentropy(x) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(negentropy(x) > 0.2);
}

TEST_CASE("negentropy is location and scale invariant and near zero for Gaussian draws") {
    const auto x = testing::t_draws(2000, 5.0, 3);
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v - 7.0);
    CHECK(negentropy(x) == doctest::Approx(negentropy(y)).epsilon(1e-10));
    CHECK(negentropy(testing::normal_draws(20000, 4)) < 1e-3);
}

TEST_CASE("t(5) samples of 5000 carry positive negentropy in most seeds") {
    int positive = 0;
    for (std::uint64_t s = 0; s < 40; ++s) positive += negentropy(testing::t_draws(5000, 5.0, 100 + s)) > 0.01;
    CHECK(positive >= 38);
}

TEST_CASE("shapiro-wilk size on normal and power on chi-square(2), n = 200") {
    int normal_ok = 0;
    int chi_rejects = 0;
    const int seeds = 500;
    for (int s = 0; s < seeds; ++s) {
        normal_ok += !shapiro_wilk(testing::normal_draws(200, 1000 + s)).rejected();
        auto z1 = testing::normal_draws(200, 5000 + s);
        auto z2 = testing::normal_draws(200, 9000 + s);
        std::vector<double> chi(200);
        for (int i = 0; i < 200; ++i) chi[i] = z1[i] * z1[i] + z2[i] * z2[i];
        chi_rejects += shapiro_wilk(chi).rejected();
    }
    const double keep = static_cast<double>(normal_ok) / seeds;
    CHECK(keep >= 0.92);
    CHECK(keep <= 0.98);
    CHECK(chi_rejects >= 0.99 * seeds);
}

TEST_CASE("nongaussianity report flags t(5) columns") {
    const auto d = testing::iv_dataset(testing::t_draws(500, 5, 1), testing::t_draws(500, 5, 2),
                                       testing::t_draws(500, 5, 3));
    const NongaussianityReport r = nongaussianity_report(d);
    CHECK(r.satisfied);
    REQUIRE(r.columns.size() == 3);
    CHECK(r.columns[0].role == Role::Instrument);
    for (const auto& c : r.columns) CHECK(c.shapiro_wilk.has_value());
}

TEST_CASE("nongaussianity report on Gaussian columns is usually not satisfied") {
    int satisfied = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto d = testing::iv_dataset(testing::normal_draws(500, 3 * s), testing::normal_draws(500, 3 * s + 1),
                                           testing::normal_draws(500, 3 * s + 2));
        satisfied += nongaussianity_report(d).satisfied;
    }
    // one of three JB tests rejects by chance with probability about 0.14
    CHECK(satisfied <= 30);
}
