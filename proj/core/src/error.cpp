#include "ivlingam/error.hpp"

namespace ivlingam {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::NonNumericCell: return "NonNumericCell";
        case ErrorCode::ZeroVarianceColumn: return "ZeroVarianceColumn";
        case ErrorCode::DuplicateRole: return "DuplicateRole";
        case ErrorCode::MissingRole: return "MissingRole";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::TooFewObservations: return "TooFewObservations";
        case ErrorCode::TooManyObservations: return "TooManyObservations";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::NotSupported: return "NotSupported";
        case ErrorCode::ZeroBootstrapSpread: return "ZeroBootstrapSpread";
        case ErrorCode::BandwidthDegenerate: return "BandwidthDegenerate";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

NonNumericCellError::NonNumericCellError(std::size_t row, std::string column, std::size_t bad_rows)
    : Error(ErrorCode::NonNumericCell,
            "row " + std::to_string(row) + ", column '" + column + "' (" +
                std::to_string(bad_rows) + " row(s) rejected)"),
      row_(row),
      column_(std::move(column)),
      bad_rows_(bad_rows) {}

}  // namespace ivlingam
