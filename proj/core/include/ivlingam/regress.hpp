#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivlingam/dataset.hpp"
#include "ivlingam/outcome.hpp"
#include "ivlingam/random.hpp"

namespace ivlingam {

/// Least-squares fit with an implicit intercept (all variables centred).
struct OlsFit {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> se;
    std::vector<double> residuals;
    double r2 = 0.0;
    double f_statistic = 0.0;
    std::size_t df_model = 0;
    std::size_t df_resid = 0;
    double sigma2 = 0.0;  ///< residual variance, SSE / df_resid

    [[nodiscard]] double coefficient(std::string_view name) const;
    [[nodiscard]] double standard_error(std::string_view name) const;
};

/// Regresses y on the given regressors after centring every variable.
/// Throws TooFewObservations unless n > k + 1, RankDeficient when the
/// centred design does not have full column rank.
[[nodiscard]] OlsFit ols(std::span<const double> y, const std::vector<std::span<const double>>& regressors,
                         std::vector<std::string> names = {});

/// Regression of the treatment on all instruments. Payload flag is "weak"
/// when F < 10, "strong" otherwise; the p-value uses F(k, n - k - 1).
[[nodiscard]] TestOutcome first_stage_f(const Dataset& data, double alpha = 0.05);

inline constexpr double kWeakInstrumentThreshold = 10.0;

/// HSIC permutation test between each instrument and the first-stage
/// residual X - proj_Z(X). One outcome per instrument, in column order.
[[nodiscard]] std::vector<TestOutcome> exogeneity_check(const Dataset& data, std::size_t permutations,
                                                        const RandomSource& rng, double alpha = 0.05);

/// Two-stage least squares of outcome on treatment using every instrument.
/// Conventional homoskedastic SE; residuals are y - beta x (centred).
[[nodiscard]] OlsFit tsls(const Dataset& data);

}  // namespace ivlingam
