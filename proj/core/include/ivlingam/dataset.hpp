#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivlingam {

enum class Role { Instrument, Treatment, Outcome, Unused };

[[nodiscard]] std::string_view to_string(Role role) noexcept;
[[nodiscard]] std::optional<Role> parse_role(std::string_view text) noexcept;

struct Column {
    std::string name;
    Role role = Role::Unused;
    std::vector<double> values;
};

/// Throws Error on the first violated invariant: equal lengths n >= 3, unique
/// names, exactly one Treatment and one Outcome, at least one Instrument,
/// finite values, positive sample variance.
void validate(std::span<const Column> columns);

/// Immutable, validated table of role-labelled numeric columns.
class Dataset {
public:
    explicit Dataset(std::vector<Column> columns);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
    [[nodiscard]] std::span<const Column> columns() const noexcept { return columns_; }
    [[nodiscard]] const Column& column(std::size_t index) const { return columns_.at(index); }
    [[nodiscard]] const Column& column(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const noexcept;

    [[nodiscard]] std::vector<std::size_t> instrument_indices() const;
    [[nodiscard]] std::size_t treatment_index() const noexcept { return treatment_; }
    [[nodiscard]] std::size_t outcome_index() const noexcept { return outcome_; }

    [[nodiscard]] const Column& treatment() const { return columns_[treatment_]; }
    [[nodiscard]] const Column& outcome() const { return columns_[outcome_]; }
    [[nodiscard]] const Column& instrument(std::size_t k = 0) const;
    [[nodiscard]] std::size_t instrument_count() const noexcept;

    /// The (Z_k, X, Y) system for the k-th instrument, Unused columns dropped.
    [[nodiscard]] Dataset iv_system(std::size_t k) const;

    /// Role columns only, in their original order.
    [[nodiscard]] Dataset role_columns() const;

    /// Row-resampled copy (bootstrap). Resamples are not re-validated: a
    /// resample of a valid dataset can hold a constant column, which downstream
    /// estimators report as DegenerateInput.
    [[nodiscard]] Dataset with_rows(std::span<const std::size_t> rows) const;

    /// Copy with one column's values replaced (permutation tests).
    [[nodiscard]] Dataset with_values(std::size_t column, std::vector<double> values) const;

    friend bool operator==(const Dataset& a, const Dataset& b);

private:
    struct Unchecked {};
    Dataset(std::vector<Column> columns, Unchecked);
    void index_roles();

    std::vector<Column> columns_;
    std::size_t rows_ = 0;
    std::size_t treatment_ = 0;
    std::size_t outcome_ = 0;
};

[[nodiscard]] double mean(std::span<const double> x) noexcept;
/// Unbiased (n-1) sample variance.
[[nodiscard]] double sample_variance(std::span<const double> x) noexcept;
[[nodiscard]] std::vector<double> centered(std::span<const double> x);

}  // namespace ivlingam
