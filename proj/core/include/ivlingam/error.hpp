#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ivlingam {

/// Every failure the library reports carries one of these codes.
enum class ErrorCode {
    MissingColumn,
    NonNumericCell,
    ZeroVarianceColumn,
    DuplicateRole,
    MissingRole,
    LengthMismatch,
    NonFiniteValue,
    EmptyInput,
    TooFewObservations,
    TooManyObservations,
    ZeroVariance,
    RankDeficient,
    DegenerateInput,
    NotSupported,
    ZeroBootstrapSpread,
    BandwidthDegenerate,
    InvalidArgument,
    IoError,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Strict CSV ingestion failure. `row` is the 1-based data row (header excluded)
/// of the first offending cell; `bad_rows` counts every rejected row.
class NonNumericCellError : public Error {
public:
    NonNumericCellError(std::size_t row, std::string column, std::size_t bad_rows);

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] const std::string& column() const noexcept { return column_; }
    [[nodiscard]] std::size_t bad_rows() const noexcept { return bad_rows_; }

private:
    std::size_t row_;
    std::string column_;
    std::size_t bad_rows_;
};

}  // namespace ivlingam
