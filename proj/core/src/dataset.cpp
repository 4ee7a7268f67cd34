#include "ivlingam/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ivlingam/error.hpp"

namespace ivlingam {

std::string_view to_string(Role role) noexcept {
    switch (role) {
        case Role::Instrument: return "instrument";
        case Role::Treatment: return "treatment";
        case Role::Outcome: return "outcome";
        case Role::Unused: return "unused";
    }
    return "unused";
}

std::optional<Role> parse_role(std::string_view text) noexcept {
    for (Role r : {Role::Instrument, Role::Treatment, Role::Outcome, Role::Unused}) {
        if (text == to_string(r)) return r;
    }
    return std::nullopt;
}

double mean(std::span<const double> x) noexcept {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) noexcept {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

std::vector<double> centered(std::span<const double> x) {
    const double m = mean(x);
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v -= m;
    return out;
}

void validate(std::span<const Column> columns) {
    if (columns.empty()) throw Error(ErrorCode::EmptyInput, "dataset has no columns");

    std::set<std::string_view> names;
    for (const auto& c : columns) {
        if (!names.insert(c.name).second)
            throw Error(ErrorCode::InvalidArgument, "column '" + c.name + "' appears twice");
    }

    const auto count = [&](Role r) {
        return std::count_if(columns.begin(), columns.end(), [r](const Column& c) { return c.role == r; });
    };
    if (count(Role::Treatment) > 1) throw Error(ErrorCode::DuplicateRole, "more than one treatment column");
    if (count(Role::Outcome) > 1) throw Error(ErrorCode::DuplicateRole, "more than one outcome column");
    if (count(Role::Treatment) == 0) throw Error(ErrorCode::MissingRole, "no treatment column");
    if (count(Role::Outcome) == 0) throw Error(ErrorCode::MissingRole, "no outcome column");
    if (count(Role::Instrument) == 0) throw Error(ErrorCode::MissingRole, "no instrument column");

    const std::size_t n = columns.front().values.size();
    for (const auto& c : columns) {
        if (c.values.size() != n)
            throw Error(ErrorCode::LengthMismatch, "column '" + c.name + "' has " +
                                                       std::to_string(c.values.size()) + " rows, expected " +
                                                       std::to_string(n));
    }
    if (n < 3) throw Error(ErrorCode::TooFewObservations, "need at least 3 rows, got " + std::to_string(n));

    for (const auto& c : columns) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(c.values[i]))
                throw Error(ErrorCode::NonFiniteValue,
                            "column '" + c.name + "' row " + std::to_string(i + 1) + " is not finite");
        }
        if (!(sample_variance(c.values) > 0.0))
            throw Error(ErrorCode::ZeroVarianceColumn, "column '" + c.name + "' is constant");
    }
}

Dataset::Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {
    validate(columns_);
    index_roles();
}

Dataset::Dataset(std::vector<Column> columns, Unchecked) : columns_(std::move(columns)) { index_roles(); }

void Dataset::index_roles() {
    rows_ = columns_.empty() ? 0 : columns_.front().values.size();
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].role == Role::Treatment) treatment_ = i;
        if (columns_[i].role == Role::Outcome) outcome_ = i;
    }
}

std::optional<std::size_t> Dataset::find(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) return i;
    }
    return std::nullopt;
}

const Column& Dataset::column(std::string_view name) const {
    auto idx = find(name);
    if (!idx) throw Error(ErrorCode::MissingColumn, "no column named '" + std::string(name) + "'");
    return columns_[*idx];
}

std::vector<std::size_t> Dataset::instrument_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].role == Role::Instrument) out.push_back(i);
    }
    return out;
}

std::size_t Dataset::instrument_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(columns_.begin(), columns_.end(),
                                                  [](const Column& c) { return c.role == Role::Instrument; }));
}

const Column& Dataset::instrument(std::size_t k) const {
    auto idx = instrument_indices();
    if (k >= idx.size())
        throw Error(ErrorCode::InvalidArgument, "instrument index " + std::to_string(k) + " out of range");
    return columns_[idx[k]];
}

Dataset Dataset::iv_system(std::size_t k) const {
    return Dataset({instrument(k), treatment(), outcome()}, Unchecked{});
}

Dataset Dataset::role_columns() const {
    std::vector<Column> kept;
    for (const auto& c : columns_) {
        if (c.role != Role::Unused) kept.push_back(c);
    }
    return Dataset(std::move(kept), Unchecked{});
}

Dataset Dataset::with_rows(std::span<const std::size_t> rows) const {
    std::vector<Column> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) {
        Column copy{c.name, c.role, {}};
        copy.values.reserve(rows.size());
        for (std::size_t r : rows) copy.values.push_back(c.values.at(r));
        out.push_back(std::move(copy));
    }
    return Dataset(std::move(out), Unchecked{});
}

Dataset Dataset::with_values(std::size_t column, std::vector<double> values) const {
    if (values.size() != rows_)
        throw Error(ErrorCode::LengthMismatch, "replacement column has wrong length");
    std::vector<Column> out = columns_;
    out.at(column).values = std::move(values);
    return Dataset(std::move(out), Unchecked{});
}

bool operator==(const Dataset& a, const Dataset& b) {
    if (a.columns_.size() != b.columns_.size()) return false;
    for (std::size_t i = 0; i < a.columns_.size(); ++i) {
        const auto& x = a.columns_[i];
        const auto& y = b.columns_[i];
        if (x.name != y.name || x.role != y.role || x.values.size() != y.values.size()) return false;
        // -0.0 and 0.0 are distinct for round-trip purposes
        if (!std::equal(x.values.begin(), x.values.end(), y.values.begin(),
                        [](double u, double v) { return std::signbit(u) == std::signbit(v) && u == v; }))
            return false;
    }
    return true;
}

}  // namespace ivlingam
