#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <vector>

#include "helpers.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/regress.hpp"
#include "ivlingam/simulate.hpp"

using namespace ivlingam;

namespace {

// Fixture and reference values from statsmodels OLS and a textbook 2SLS
// computed once in numpy.
const std::vector<double> kZ = {0.565534,  -1.401348, -0.275288, -1.100095, 0.072508,  -0.988106, -0.053779, -1.332508,
                                -0.774434, -0.284734, 1.95135,   0.810719,  -0.795184, -1.404719, -1.549436, -0.075027,
                                -1.028069, 0.250359,  1.909912,  -0.947884, -0.8252,   4.73278,   0.45072,   0.389185,
                                -0.461295, -0.094249, -0.066134, -0.070834, 0.097462,  -1.617613};
const std::vector<double> kX = {0.135295,  1.195735,  -1.645871, -0.742945, -0.758161, -2.469652, -3.652684, -0.45761,
                                0.26337,   0.888953,  1.357421,  -0.658654, -3.329565, -0.866292, -0.555433, 0.297348,
                                -1.331701, 0.664594,  1.366513,  -0.637923, 0.362979,  3.025071,  2.068246,  0.036925,
                                -0.967894, -0.190894, -3.836709, -2.906309, -1.653122, -0.559807};
const std::vector<double> kY = {0.675917,  0.414048,  -1.305049, -3.011064, 0.409189,  -1.832393, -0.021961, -1.473268,
                                -0.135657, -1.117227, 1.544695,  -0.800011, -2.604362, -2.224552, -0.499118, 2.63363,
                                -0.06265,  0.798622,  1.290782,  0.114285,  -2.318107, 2.735507,  2.145922,  0.167773,
                                1.992576,  -0.470911, -2.787066, -1.575366, -3.143481, -0.620878};

}  // namespace

TEST_CASE("simple regression equals the closed-form slope") {
    const double mx = std::accumulate(kX.begin(), kX.end(), 0.0) / kX.size();
    const double my = std::accumulate(kY.begin(), kY.end(), 0.0) / kY.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < kX.size(); ++i) {
        sxy += (kX[i] - mx) * (kY[i] - my);
        sxx += (kX[i] - mx) * (kX[i] - mx);
    }
    const OlsFit fit = ols(kY, {kX}, {"x"});
    CHECK(fit.coefficient("x") == doctest::Approx(sxy / sxx).epsilon(1e-12));
    double mean_resid = 0;
    for (double r : fit.residuals) mean_resid += r;
    CHECK(std::abs(mean_resid / fit.residuals.size()) < 1e-12);
}

TEST_CASE("multiple regression matches reference coefficients, standard errors, R2 and F") {
    const OlsFit fit = ols(kY, {kX, kZ}, {"x", "z"});
    CHECK(fit.coefficient("x") == doctest::Approx(0.5116246188194564).epsilon(1e-10));
    CHECK(fit.coefficient("z") == doctest::Approx(0.3839660304732186).epsilon(1e-10));
    CHECK(fit.standard_error("x") == doctest::Approx(0.16073091337816595).epsilon(1e-10));
    CHECK(fit.standard_error("z") == doctest::Approx(0.20433812546027025).epsilon(1e-10));
    CHECK(fit.r2 == doctest::Approx(0.4778034447826027).epsilon(1e-10));
    CHECK(fit.f_statistic == doctest::Approx(12.352334461263869).epsilon(1e-10));
    CHECK(fit.df_resid == 27);
}

TEST_CASE("regression errors: rank deficiency and too few rows") {
    std::vector<double> twice;
    for (double v : kX) twice.push_back(2 * v);
    CHECK_THROWS_AS((void)ols(kY, {kX, twice}), Error);
    CHECK_THROWS_AS((void)ols(std::vector<double>{1, 2}, {std::vector<double>{1, 3}}), Error);
}

TEST_CASE("first-stage F matches reference and flags a weak instrument") {
    const TestOutcome f = first_stage_f(testing::iv_dataset(kZ, kX, kY));
    CHECK(f.test == TestKind::FirstStageF);
    CHECK(f.statistic == doctest::Approx(7.8919929148250345).epsilon(1e-10));
    REQUIRE(f.p_value);
    CHECK(*f.p_value == doctest::Approx(0.00895284178454771).epsilon(1e-8));
    CHECK(f.payload.flag == "weak");
}

TEST_CASE("2SLS matches the textbook estimator") {
    const OlsFit iv = tsls(testing::iv_dataset(kZ, kX, kY));
    CHECK(iv.coefficients.front() == doctest::Approx(1.1557171378947502).epsilon(1e-10));
    CHECK(iv.se.front() == doctest::Approx(0.3754344818210633).epsilon(1e-10));
}

TEST_CASE("strong instrument DGP gives F above 100") {
    int strong = 0;
    for (std::uint64_t s = 0; s < 40; ++s) {
        SimulationSpec spec;
        strong += first_stage_f(generate(spec, RandomSource(s))).statistic > 100;
    }
    CHECK(strong >= 38);
}

TEST_CASE("irrelevant instrument is flagged weak") {
    int weak = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        SimulationSpec spec;
        spec.alpha_zx = 0.0;
        weak += first_stage_f(generate(spec, RandomSource(s))).payload.flag == "weak";
    }
    CHECK(weak >= 95);
}

TEST_CASE("2SLS is centred on the structural effect under a valid instrument") {
    std::vector<double> est;
    for (std::uint64_t s = 0; s < 60; ++s) {
        SimulationSpec spec;
        spec.n = 2000;
        est.push_back(tsls(generate(spec, RandomSource(s))).coefficients.front());
    }
    std::nth_element(est.begin(), est.begin() + est.size() / 2, est.end());
    CHECK(std::abs(est[est.size() / 2] - 0.5) < 0.05);
}

TEST_CASE("outcome equation regression recovers the direct effects") {
    SimulationSpec spec;
    spec.n = 2000;
    spec.alpha_zy = 0.3;
    const Dataset d = generate(spec, RandomSource(11));
    const OlsFit fit = ols(d.outcome().values, {d.treatment().values, d.instrument().values}, {"x", "z"});
    CHECK(std::abs(fit.coefficient("x") - 0.5) < 0.1);
    CHECK(std::abs(fit.coefficient("z") - 0.3) < 0.1);
}

TEST_CASE("exogeneity check: independent vs dependent first-stage error") {
    int kept = 0;
    int rejected = 0;
    const int seeds = 30;
    for (int s = 0; s < seeds; ++s) {
        const auto z = testing::t_draws(500, 5, 40 + s);
        const auto e = testing::t_draws(500, 5, 400 + s);
        const auto u = testing::t_draws(500, 5, 800 + s);
        std::vector<double> x(500), xd(500), y(500);
        for (int i = 0; i < 500; ++i) {
            x[i] = 0.7 * z[i] + e[i];
            xd[i] = 0.7 * z[i] + 0.5 * z[i] * z[i] + e[i];
            y[i] = 0.5 * x[i] + u[i];
        }
        const RandomSource rng(s);
        kept += !exogeneity_check(testing::iv_dataset(z, x, y), 199, rng).front().rejected();
        rejected += exogeneity_check(testing::iv_dataset(z, xd, y), 199, rng).front().rejected();
    }
    CHECK(kept >= 0.9 * seeds - 2);
    CHECK(rejected >= 0.8 * seeds);
}
