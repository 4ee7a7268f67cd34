#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ivlingam/dataset.hpp"
#include "ivlingam/extests.hpp"
#include "ivlingam/outcome.hpp"
#include "ivlingam/random.hpp"

namespace ivlingam {

/// Structural system with i.i.d. Student-t errors:
///   Z = e_z,  X = alpha_zx Z + e_x,  Y = alpha_xy X + alpha_zy Z + e_y.
struct SimulationSpec {
    std::size_t n = 500;
    double alpha_zx = 0.7;
    double alpha_xy = 0.5;
    double alpha_zy = 0.0;
    double df = 5.0;
    /// Gaussian errors instead of t(df); used for negative controls.
    bool gaussian = false;
    std::uint64_t seed = 0;  ///< master seed used by generate(spec)

    friend bool operator==(const SimulationSpec&, const SimulationSpec&) = default;
};

inline constexpr std::size_t kMinSimulationRows = 10;

/// Throws InvalidArgument unless n >= 10 and (for t errors) df > 2.
void validate(const SimulationSpec& spec);

/// Columns z, x, y (instrument, treatment, outcome). Errors are raw t(df)
/// draws, not rescaled to unit variance. Deterministic per rng.
[[nodiscard]] Dataset generate(const SimulationSpec& spec, const RandomSource& rng);
[[nodiscard]] Dataset generate(const SimulationSpec& spec);

/// Two instruments with their own direct effects on the outcome:
///   X = alpha_zx (Z1 + Z2) + e_x,  Y = alpha_xy X + a1 Z1 + a2 Z2 + e_y.
/// Columns z1, z2, x, y.
[[nodiscard]] Dataset generate_two_instruments(const SimulationSpec& spec, double alpha_z1y, double alpha_z2y,
                                               const RandomSource& rng);

/// n independent draws from the spec's error distribution.
[[nodiscard]] std::vector<double> draw_errors(const SimulationSpec& spec, std::size_t n, Engine& engine);

/// Rejection rates of one test in one grid cell.
struct PowerRate {
    TestKind test = TestKind::BootstrapPercentile;
    double rate = 0.0;           ///< rejections / reps
    std::size_t rejections = 0;
    std::size_t reps = 0;        ///< replicates where the test produced a decision
    friend bool operator==(const PowerRate&, const PowerRate&) = default;
};

struct PowerCell {
    double alpha_zy = 0.0;
    std::size_t n = 0;
    std::vector<PowerRate> rates;  ///< in configured test order
    std::size_t failed = 0;        ///< replicates where data generation or the baseline fit failed

    [[nodiscard]] const PowerRate* find(TestKind kind) const noexcept;
    friend bool operator==(const PowerCell&, const PowerCell&) = default;
};

struct PowerTable {
    SimulationSpec base;        ///< alpha_zy and n are overridden per cell
    ExclusionConfig tests;
    std::size_t reps = 0;
    std::vector<PowerCell> cells;  ///< alpha_zy major, n minor, in grid order

    [[nodiscard]] const PowerCell* find(double alpha_zy, std::size_t n) const noexcept;
    friend bool operator==(const PowerTable&, const PowerTable&) = default;
};

/// Desk-scale replication count (the paper used 1000).
inline constexpr std::size_t kDefaultPowerReps = 200;

/// For every (alpha_zy, n) cell, generates reps datasets and runs the
/// configured exclusion tests at config.alpha.
///
/// Replicate r of every cell with sample size n uses
/// rng.derive("power", n).derive("rep", r), so cells that differ only in
/// alpha_zy see the same error draws (common random numbers). Failed
/// replicates and failed tests are counted, not fatal.
[[nodiscard]] PowerTable power_analysis(const std::vector<double>& alpha_zy_grid,
                                        const std::vector<std::size_t>& n_grid, std::size_t reps,
                                        const SimulationSpec& base, const ExclusionConfig& config,
                                        const RandomSource& rng);

/// Long format, header alpha_zy,n,test,rate,reps.
void write_power_csv(std::ostream& out, const PowerTable& table);

}  // namespace ivlingam
