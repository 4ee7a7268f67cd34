#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <variant>

#include "ivlingam/extests.hpp"
#include "ivlingam/normality.hpp"
#include "ivlingam/outcome.hpp"
#include "ivlingam/protocol.hpp"
#include "ivlingam/simulate.hpp"

namespace ivlingam {

inline constexpr std::string_view kReportSchema = "ivlingam/1";

[[nodiscard]] std::string_view tool_version() noexcept;

using Json = nlohmann::json;

// JSON mappings. Doubles that are not finite are written as the strings
// "inf", "-inf" and "nan" so that every report survives a round trip.
void to_json(Json& j, const OutcomePayload& v);
void from_json(const Json& j, OutcomePayload& v);
void to_json(Json& j, const TestOutcome& v);
void from_json(const Json& j, TestOutcome& v);
void to_json(Json& j, const ColumnNormality& v);
void from_json(const Json& j, ColumnNormality& v);
void to_json(Json& j, const NongaussianityReport& v);
void from_json(const Json& j, NongaussianityReport& v);
void to_json(Json& j, const ExclusionConfig& v);
void from_json(const Json& j, ExclusionConfig& v);
void to_json(Json& j, const ExclusionVerdict& v);
void from_json(const Json& j, ExclusionVerdict& v);
void to_json(Json& j, const ProtocolWarning& v);
void from_json(const Json& j, ProtocolWarning& v);
void to_json(Json& j, const ModelSummary& v);
void from_json(const Json& j, ModelSummary& v);
void to_json(Json& j, const MethodComparison& v);
void from_json(const Json& j, MethodComparison& v);
void to_json(Json& j, const ProtocolReport& v);
void from_json(const Json& j, ProtocolReport& v);
void to_json(Json& j, const InstrumentResult& v);
void from_json(const Json& j, InstrumentResult& v);
void to_json(Json& j, const MultiIvReport& v);
void from_json(const Json& j, MultiIvReport& v);
void to_json(Json& j, const SimulationSpec& v);
void from_json(const Json& j, SimulationSpec& v);
void to_json(Json& j, const PowerRate& v);
void from_json(const Json& j, PowerRate& v);
void to_json(Json& j, const PowerCell& v);
void from_json(const Json& j, PowerCell& v);
void to_json(Json& j, const PowerTable& v);
void from_json(const Json& j, PowerTable& v);

using ReportBody = std::variant<ProtocolReport, ExclusionVerdict, PowerTable, MultiIvReport>;

/// "protocol", "exclusion", "power" or "multi_instrument".
[[nodiscard]] std::string_view body_kind(const ReportBody& body) noexcept;

/// Everything a command writes. The body depends only on the inputs, the
/// configuration and the seed; the timestamp is the only run-specific field.
struct ReportEnvelope {
    std::string schema = std::string(kReportSchema);
    std::string tool_version = std::string(ivlingam::tool_version());
    std::string timestamp;  ///< UTC, ISO 8601
    std::uint64_t master_seed = 0;
    Json config = Json::object();
    ReportBody body;

    friend bool operator==(const ReportEnvelope&, const ReportEnvelope&) = default;
};

/// Current UTC time as YYYY-MM-DDThh:mm:ssZ.
[[nodiscard]] std::string utc_timestamp();

void to_json(Json& j, const ReportEnvelope& v);
/// Throws InvalidArgument for a missing or unknown schema or body kind.
void from_json(const Json& j, ReportEnvelope& v);

/// Serialised body alone; identical runs give identical strings.
[[nodiscard]] std::string body_json(const ReportEnvelope& envelope);

/// Human-readable tables, rendered from the JSON form of an envelope (never
/// from the in-memory report), so printed and saved results cannot diverge.
[[nodiscard]] std::string render(const Json& envelope);

}  // namespace ivlingam
