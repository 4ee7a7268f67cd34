#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivlingam/dataset.hpp"

namespace ivlingam {

struct RootScore {
    std::size_t candidate = 0;
    double score = 0.0;  ///< sum over i != candidate of HSIC(candidate, residual of i on candidate)
};

/// Scores every column as the exogenous root of the system. Columns are
/// centred internally; Gaussian kernels use median-heuristic bandwidths.
/// Sorted ascending; scores within 1e-12 of the minimum are tied and the
/// lowest column index goes first.
[[nodiscard]] std::vector<RootScore> find_root(const std::vector<std::vector<double>>& columns);

inline constexpr double kRootTieTolerance = 1e-12;

/// The coefficients that carry the IV interpretation. `consistent` is false
/// when the estimated ordering does not put the instrument before the
/// treatment before the outcome (OrderingInconsistentWithIV).
struct IvEffects {
    double alpha_zx = 0.0;
    double alpha_xy = 0.0;
    double alpha_zy = 0.0;
    bool consistent = false;
};

/// Linear acyclic model x = B x + e over the role columns of a dataset.
struct CausalModel {
    std::vector<std::string> names;
    std::vector<Role> roles;
    /// order[k] is the variable at causal position k (root first)
    std::vector<std::size_t> order;
    /// row-major p x p; b[i * p + j] is the direct effect of variable j on variable i
    std::vector<double> b;
    /// estimated structural errors e_i, centred
    std::vector<std::vector<double>> residuals;
    bool consistent_with_iv = false;

    [[nodiscard]] std::size_t size() const noexcept { return names.size(); }
    [[nodiscard]] double effect(std::size_t target, std::size_t source) const { return b.at(target * size() + source); }
    [[nodiscard]] std::size_t index_of(std::string_view name) const;
    [[nodiscard]] std::size_t position_of(std::size_t variable) const;
    /// Effects for the k-th instrument (in column order).
    [[nodiscard]] IvEffects iv_effects(std::size_t instrument = 0) const;
};

/// DirectLiNGAM: causal ordering by repeated root selection on residualised
/// columns, then each variable regressed (OLS, centred) on all of its
/// predecessors. Unused columns are ignored.
/// Throws DegenerateInput for constant columns and RankDeficient when the
/// centred data matrix is singular.
[[nodiscard]] CausalModel direct_lingam(const Dataset& data);

/// Same ordering as direct_lingam, but the outcome is regressed on its
/// non-instrument predecessors only (instrument -> outcome effects fixed at 0).
[[nodiscard]] CausalModel restricted_lingam(const Dataset& data);

/// Coefficients and residuals for a given ordering of the role columns.
/// With `restrict_outcome`, instruments are excluded from the outcome's
/// regressors.
[[nodiscard]] CausalModel fit_ordered(const Dataset& data, std::span<const std::size_t> order,
                                      bool restrict_outcome);

/// Just the ordering step of direct_lingam, indices into data.role_columns().
[[nodiscard]] std::vector<std::size_t> estimate_order(const Dataset& data);

}  // namespace ivlingam
