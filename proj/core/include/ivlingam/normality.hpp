#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivlingam/dataset.hpp"
#include "ivlingam/outcome.hpp"

namespace ivlingam {

/// Population (biased) moments; kurtosis is not excess (Gaussian = 3).
struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

[[nodiscard]] MomentSummary moments(std::span<const double> x);

/// JB = n/6 (S^2 + (K-3)^2/4), chi-square(2) reference. Needs n >= 8.
[[nodiscard]] TestOutcome jarque_bera(std::span<const double> x, double alpha = 0.05);

/// Shapiro-Wilk W with Royston's (1995) coefficients and p-value
/// approximation, valid for 3 <= n <= 5000.
[[nodiscard]] TestOutcome shapiro_wilk(std::span<const double> x, double alpha = 0.05);

/// Approximate negentropy of the standardised sample using the
/// exp(-u^2/2) contrast:
///   J = k1 E[u exp(-u^2/2)]^2 + k2 (E[exp(-u^2/2)] - sqrt(1/2))^2
/// with k1 = 36/(8 sqrt 3 - 9), k2 = 24/(16 sqrt 3 - 27).
[[nodiscard]] double negentropy(std::span<const double> x);

struct ColumnNormality {
    std::string variable;
    Role role = Role::Unused;
    TestOutcome jarque_bera;
    std::optional<TestOutcome> shapiro_wilk;  ///< absent above 5000 rows
    double negentropy = 0.0;

    friend bool operator==(const ColumnNormality&, const ColumnNormality&) = default;
};

struct NongaussianityReport {
    std::vector<ColumnNormality> columns;
    /// At least one role column rejects normality under Jarque-Bera.
    bool satisfied = false;
    std::vector<std::string> notes;

    friend bool operator==(const NongaussianityReport&, const NongaussianityReport&) = default;
};

/// Shapiro-Wilk is skipped (noted) for columns with more than 5000 rows.
[[nodiscard]] NongaussianityReport nongaussianity_report(const Dataset& data, double alpha = 0.05);

}  // namespace ivlingam
