#include "ivlingam/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <sstream>

#include "ivlingam/error.hpp"

#ifndef IVLINGAM_VERSION
#define IVLINGAM_VERSION "0.0.0"
#endif

namespace ivlingam {

std::string_view tool_version() noexcept { return IVLINGAM_VERSION; }

namespace {

Json put(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double get_double(const Json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw Error(ErrorCode::InvalidArgument, "expected a number, got '" + s + "'");
    }
    return j.get<double>();
}

template <class T>
Json put_optional(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, double>) {
        return put(*v);
    } else {
        return Json(*v);
    }
}

template <class T>
std::optional<T> get_optional(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if constexpr (std::is_same_v<T, double>) {
        return get_double(j.at(key));
    } else {
        return j.at(key).get<T>();
    }
}

TestKind get_test(const Json& j) {
    const auto s = j.get<std::string>();
    const auto k = parse_test_kind(s);
    if (!k) throw Error(ErrorCode::InvalidArgument, "unknown test '" + s + "'");
    return *k;
}

Decision get_decision(const Json& j) {
    const auto s = j.get<std::string>();
    if (s == to_string(Decision::Reject)) return Decision::Reject;
    if (s == to_string(Decision::NonReject)) return Decision::NonReject;
    throw Error(ErrorCode::InvalidArgument, "unknown decision '" + s + "'");
}

Role get_role(const Json& j) {
    const auto s = j.get<std::string>();
    const auto r = parse_role(s);
    if (!r) throw Error(ErrorCode::InvalidArgument, "unknown role '" + s + "'");
    return *r;
}

}  // namespace

void to_json(Json& j, const OutcomePayload& v) {
    j = Json{{"variable", put_optional(v.variable)},   {"estimate", put_optional(v.estimate)},
             {"ci_lower", put_optional(v.ci_lower)},   {"ci_upper", put_optional(v.ci_upper)},
             {"se", put_optional(v.se)},               {"df1", put_optional(v.df1)},
             {"df2", put_optional(v.df2)},             {"resamples", put_optional(v.resamples)},
             {"used", put_optional(v.used)},           {"dropped", put_optional(v.dropped)},
             {"flag", put_optional(v.flag)},           {"notes", v.notes}};
}

void from_json(const Json& j, OutcomePayload& v) {
    v.variable = get_optional<std::string>(j, "variable");
    v.estimate = get_optional<double>(j, "estimate");
    v.ci_lower = get_optional<double>(j, "ci_lower");
    v.ci_upper = get_optional<double>(j, "ci_upper");
    v.se = get_optional<double>(j, "se");
    v.df1 = get_optional<double>(j, "df1");
    v.df2 = get_optional<double>(j, "df2");
    v.resamples = get_optional<std::size_t>(j, "resamples");
    v.used = get_optional<std::size_t>(j, "used");
    v.dropped = get_optional<std::size_t>(j, "dropped");
    v.flag = get_optional<std::string>(j, "flag");
    v.notes = j.value("notes", std::vector<std::string>{});
}

void to_json(Json& j, const TestOutcome& v) {
    j = Json{{"test", to_string(v.test)},         {"statistic", put(v.statistic)},
             {"p_value", put_optional(v.p_value)}, {"decision", to_string(v.decision)},
             {"alpha", put(v.alpha)},              {"payload", v.payload}};
}

void from_json(const Json& j, TestOutcome& v) {
    v.test = get_test(j.at("test"));
    v.statistic = get_double(j.at("statistic"));
    v.p_value = get_optional<double>(j, "p_value");
    v.decision = get_decision(j.at("decision"));
    v.alpha = get_double(j.at("alpha"));
    v.payload = j.at("payload").get<OutcomePayload>();
}

void to_json(Json& j, const ColumnNormality& v) {
    j = Json{{"variable", v.variable},
             {"role", to_string(v.role)},
             {"jarque_bera", v.jarque_bera},
             {"shapiro_wilk", v.shapiro_wilk ? Json(*v.shapiro_wilk) : Json(nullptr)},
             {"negentropy", put(v.negentropy)}};
}

void from_json(const Json& j, ColumnNormality& v) {
    v.variable = j.at("variable").get<std::string>();
    v.role = get_role(j.at("role"));
    v.jarque_bera = j.at("jarque_bera").get<TestOutcome>();
    v.shapiro_wilk = get_optional<TestOutcome>(j, "shapiro_wilk");
    v.negentropy = get_double(j.at("negentropy"));
}

void to_json(Json& j, const NongaussianityReport& v) {
    j = Json{{"columns", v.columns}, {"satisfied", v.satisfied}, {"notes", v.notes}};
}

void from_json(const Json& j, NongaussianityReport& v) {
    v.columns = j.at("columns").get<std::vector<ColumnNormality>>();
    v.satisfied = j.at("satisfied").get<bool>();
    v.notes = j.value("notes", std::vector<std::string>{});
}

void to_json(Json& j, const ExclusionConfig& v) {
    Json tests = Json::array();
    for (TestKind k : v.tests) tests.push_back(to_string(k));
    j = Json{{"alpha", put(v.alpha)}, {"bootstrap", v.bootstrap}, {"permutations", v.permutations}, {"tests", tests}};
}

void from_json(const Json& j, ExclusionConfig& v) {
    v.alpha = get_double(j.at("alpha"));
    v.bootstrap = j.at("bootstrap").get<std::size_t>();
    v.permutations = j.at("permutations").get<std::size_t>();
    v.tests.clear();
    for (const auto& t : j.at("tests")) v.tests.push_back(get_test(t));
}

void to_json(Json& j, const ExclusionVerdict& v) {
    j = Json{{"alpha_zy_hat", put(v.alpha_zy_hat)},
             {"ordering_consistent", v.ordering_consistent},
             {"outcomes", v.outcomes},
             {"rejections", v.rejections},
             {"label", to_string(v.label)}};
}

void from_json(const Json& j, ExclusionVerdict& v) {
    v.alpha_zy_hat = get_double(j.at("alpha_zy_hat"));
    v.ordering_consistent = j.at("ordering_consistent").get<bool>();
    v.outcomes = j.at("outcomes").get<std::vector<TestOutcome>>();
    v.rejections = j.at("rejections").get<std::size_t>();
    const auto label = parse_verdict_label(j.at("label").get<std::string>());
    if (!label) throw Error(ErrorCode::InvalidArgument, "unknown verdict label");
    v.label = *label;
}

void to_json(Json& j, const ProtocolWarning& v) {
    j = Json{{"step", v.step}, {"code", v.code}, {"message", v.message}};
}

void from_json(const Json& j, ProtocolWarning& v) {
    v.step = j.at("step").get<int>();
    v.code = j.at("code").get<std::string>();
    v.message = j.at("message").get<std::string>();
}

void to_json(Json& j, const ModelSummary& v) {
    j = Json{{"order", v.order},
             {"alpha_zx", put(v.alpha_zx)},
             {"alpha_xy", put(v.alpha_xy)},
             {"alpha_zy", put(v.alpha_zy)},
             {"consistent_with_iv", v.consistent_with_iv}};
}

void from_json(const Json& j, ModelSummary& v) {
    v.order = j.at("order").get<std::vector<std::string>>();
    v.alpha_zx = get_double(j.at("alpha_zx"));
    v.alpha_xy = get_double(j.at("alpha_xy"));
    v.alpha_zy = get_double(j.at("alpha_zy"));
    v.consistent_with_iv = j.at("consistent_with_iv").get<bool>();
}

void to_json(Json& j, const MethodComparison& v) {
    j = Json{{"lingam_alpha_xy", put(v.lingam_alpha_xy)},
             {"tsls_beta", put(v.tsls_beta)},
             {"tsls_se", put(v.tsls_se)},
             {"gap", put(v.gap)}};
}

void from_json(const Json& j, MethodComparison& v) {
    v.lingam_alpha_xy = get_double(j.at("lingam_alpha_xy"));
    v.tsls_beta = get_double(j.at("tsls_beta"));
    v.tsls_se = get_double(j.at("tsls_se"));
    v.gap = get_double(j.at("gap"));
}

void to_json(Json& j, const ProtocolReport& v) {
    j = Json{{"step1_nongaussianity", v.step1}, {"step2_first_stage", v.step2}, {"step3_exogeneity", v.step3},
             {"step4_structure", v.step4},      {"step5_exclusion", v.step5},   {"step6_comparison", v.step6},
             {"warnings", v.warnings}};
}

void from_json(const Json& j, ProtocolReport& v) {
    v.step1 = j.at("step1_nongaussianity").get<NongaussianityReport>();
    v.step2 = j.at("step2_first_stage").get<TestOutcome>();
    v.step3 = j.at("step3_exogeneity").get<TestOutcome>();
    v.step4 = j.at("step4_structure").get<ModelSummary>();
    v.step5 = j.at("step5_exclusion").get<ExclusionVerdict>();
    v.step6 = j.at("step6_comparison").get<MethodComparison>();
    v.warnings = j.at("warnings").get<std::vector<ProtocolWarning>>();
}

void to_json(Json& j, const InstrumentResult& v) {
    j = Json{{"instrument", v.instrument},
             {"alpha_zy_hat", put(v.alpha_zy_hat)},
             {"ordering_consistent", v.ordering_consistent},
             {"outcomes", v.outcomes},
             {"rejections", v.rejections},
             {"error", put_optional(v.error)}};
}

void from_json(const Json& j, InstrumentResult& v) {
    v.instrument = j.at("instrument").get<std::string>();
    v.alpha_zy_hat = get_double(j.at("alpha_zy_hat"));
    v.ordering_consistent = j.at("ordering_consistent").get<bool>();
    v.outcomes = j.at("outcomes").get<std::vector<TestOutcome>>();
    v.rejections = j.at("rejections").get<std::size_t>();
    v.error = get_optional<std::string>(j, "error");
}

void to_json(Json& j, const MultiIvReport& v) {
    j = Json{{"k", v.k},
             {"alpha", put(v.alpha)},
             {"alpha_adj", put(v.alpha_adj)},
             {"instruments", v.instruments},
             {"label", to_string(v.label)}};
}

void from_json(const Json& j, MultiIvReport& v) {
    v.k = j.at("k").get<std::size_t>();
    v.alpha = get_double(j.at("alpha"));
    v.alpha_adj = get_double(j.at("alpha_adj"));
    v.instruments = j.at("instruments").get<std::vector<InstrumentResult>>();
    const auto label = parse_multi_iv_label(j.at("label").get<std::string>());
    if (!label) throw Error(ErrorCode::InvalidArgument, "unknown multi-instrument label");
    v.label = *label;
}

void to_json(Json& j, const SimulationSpec& v) {
    j = Json{{"n", v.n},
             {"alpha_zx", put(v.alpha_zx)},
             {"alpha_xy", put(v.alpha_xy)},
             {"alpha_zy", put(v.alpha_zy)},
             {"df", put(v.df)},
             {"gaussian", v.gaussian},
             {"seed", v.seed}};
}

void from_json(const Json& j, SimulationSpec& v) {
    v.n = j.at("n").get<std::size_t>();
    v.alpha_zx = get_double(j.at("alpha_zx"));
    v.alpha_xy = get_double(j.at("alpha_xy"));
    v.alpha_zy = get_double(j.at("alpha_zy"));
    v.df = get_double(j.at("df"));
    v.gaussian = j.value("gaussian", false);
    v.seed = j.value("seed", std::uint64_t{0});
}

void to_json(Json& j, const PowerRate& v) {
    j = Json{{"test", to_string(v.test)}, {"rate", put(v.rate)}, {"rejections", v.rejections}, {"reps", v.reps}};
}

void from_json(const Json& j, PowerRate& v) {
    v.test = get_test(j.at("test"));
    v.rate = get_double(j.at("rate"));
    v.rejections = j.at("rejections").get<std::size_t>();
    v.reps = j.at("reps").get<std::size_t>();
}

void to_json(Json& j, const PowerCell& v) {
    j = Json{{"alpha_zy", put(v.alpha_zy)}, {"n", v.n}, {"rates", v.rates}, {"failed", v.failed}};
}

void from_json(const Json& j, PowerCell& v) {
    v.alpha_zy = get_double(j.at("alpha_zy"));
    v.n = j.at("n").get<std::size_t>();
    v.rates = j.at("rates").get<std::vector<PowerRate>>();
    v.failed = j.at("failed").get<std::size_t>();
}

void to_json(Json& j, const PowerTable& v) {
    j = Json{{"base", v.base}, {"tests", v.tests}, {"reps", v.reps}, {"cells", v.cells}};
}

void from_json(const Json& j, PowerTable& v) {
    v.base = j.at("base").get<SimulationSpec>();
    v.tests = j.at("tests").get<ExclusionConfig>();
    v.reps = j.at("reps").get<std::size_t>();
    v.cells = j.at("cells").get<std::vector<PowerCell>>();
}

std::string_view body_kind(const ReportBody& body) noexcept {
    switch (body.index()) {
        case 0: return "protocol";
        case 1: return "exclusion";
        case 2: return "power";
        default: return "multi_instrument";
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void to_json(Json& j, const ReportEnvelope& v) {
    j = Json{{"schema", v.schema},           {"tool_version", v.tool_version}, {"timestamp", v.timestamp},
             {"master_seed", v.master_seed}, {"config", v.config},             {"kind", body_kind(v.body)}};
    std::visit([&](const auto& body) { j["body"] = body; }, v.body);
}

void from_json(const Json& j, ReportEnvelope& v) {
    if (!j.contains("schema") || j.at("schema") != kReportSchema)
        throw Error(ErrorCode::InvalidArgument, "not an ivlingam/1 report");
    v.schema = j.at("schema").get<std::string>();
    v.tool_version = j.at("tool_version").get<std::string>();
    v.timestamp = j.at("timestamp").get<std::string>();
    v.master_seed = j.at("master_seed").get<std::uint64_t>();
    v.config = j.at("config");
    const auto kind = j.at("kind").get<std::string>();
    const Json& body = j.at("body");
    if (kind == "protocol") {
        v.body = body.get<ProtocolReport>();
    } else if (kind == "exclusion") {
        v.body = body.get<ExclusionVerdict>();
    } else if (kind == "power") {
        v.body = body.get<PowerTable>();
    } else if (kind == "multi_instrument") {
        v.body = body.get<MultiIvReport>();
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown report kind '" + kind + "'");
    }
}

std::string body_json(const ReportEnvelope& envelope) {
    Json j;
    std::visit([&](const auto& body) { j = body; }, envelope.body);
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string fmt(const char* format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

std::string num(const Json& j, const char* format = "%.4f") {
    if (j.is_null()) return "-";
    return fmt(format, get_double(j));
}

std::string pval(const Json& j) {
    if (j.is_null()) return "-";
    const double p = get_double(j);
    return p < 1e-4 ? "<0.0001" : fmt("%.4f", p);
}

std::string pad(std::string s, std::size_t width, bool right = false) {
    if (s.size() >= width) return s;
    return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

std::string decision_label(const Json& outcome) {
    if (outcome.at("p_value").is_null()) return "error";
    return std::string(short_label(get_decision(outcome.at("decision"))));
}

std::string test_name(const Json& outcome) {
    const TestKind k = get_test(outcome.at("test"));
    const Json& payload = outcome.at("payload");
    const auto resamples = [&](const char* unit) {
        const Json& r = payload.at("resamples");
        if (r.is_null()) return std::string();
        if (payload.at("flag") == "exhaustive") return std::string(" (exhaustive)");
        return " (" + std::to_string(r.get<std::size_t>()) + " " + unit + ")";
    };
    switch (k) {
        case TestKind::BootstrapPercentile: return "Bootstrap Percentile" + resamples("iter.");
        case TestKind::AsymptoticNormal: return "Asymptotic Normal Test";
        case TestKind::Permutation: return "Permutation Test" + resamples("perm.");
        case TestKind::LikelihoodRatio: return "Likelihood Ratio Test";
        case TestKind::HSIC: return "Independence Test (HSIC)";
        case TestKind::JarqueBera: return "Jarque-Bera";
        case TestKind::ShapiroWilk: return "Shapiro-Wilk";
        case TestKind::FirstStageF: return "First-stage F";
    }
    return "?";
}

void outcome_rows(std::ostringstream& out, const Json& outcomes) {
    out << pad("Test", 36) << pad("Statistic", 12, true) << pad("p-value", 10, true) << "  Decision\n";
    for (const auto& o : outcomes) {
        out << pad(test_name(o), 36) << pad(num(o.at("statistic")), 12, true) << pad(pval(o.at("p_value")), 10, true)
            << "  " << decision_label(o) << '\n';
        if (o.at("p_value").is_null()) {
            for (const auto& note : o.at("payload").at("notes")) out << "    " << note.get<std::string>() << '\n';
        }
    }
}

void render_exclusion(std::ostringstream& out, const Json& v) {
    out << "alpha_zy_hat = " << num(v.at("alpha_zy_hat"))
        << (v.at("ordering_consistent").get<bool>() ? "" : "  [ordering inconsistent with IV]") << "\n\n";
    outcome_rows(out, v.at("outcomes"));
    out << "\nVerdict: " << v.at("label").get<std::string>() << " (" << v.at("rejections").get<std::size_t>() << "/"
        << v.at("outcomes").size() << ")\n";
}

void render_protocol(std::ostringstream& out, const Json& v) {
    out << "Step 1. Non-Gaussianity\n";
    out << "  " << pad("Variable", 14) << pad("Role", 12) << pad("JB", 12, true) << pad("p", 10, true)
        << pad("SW W", 10, true) << pad("p", 10, true) << pad("Negentropy", 12, true) << '\n';
    for (const auto& c : v.at("step1_nongaussianity").at("columns")) {
        const Json& jb = c.at("jarque_bera");
        const Json& sw = c.at("shapiro_wilk");
        out << "  " << pad(c.at("variable").get<std::string>(), 14) << pad(c.at("role").get<std::string>(), 12)
            << pad(num(jb.at("statistic"), "%.2f"), 12, true) << pad(pval(jb.at("p_value")), 10, true)
            << pad(sw.is_null() ? "-" : num(sw.at("statistic")), 10, true)
            << pad(sw.is_null() ? "-" : pval(sw.at("p_value")), 10, true)
            << pad(num(c.at("negentropy")), 12, true) << '\n';
    }
    out << "  satisfied: " << (v.at("step1_nongaussianity").at("satisfied").get<bool>() ? "yes" : "no") << "\n\n";

    const Json& fs = v.at("step2_first_stage");
    out << "Step 2. First stage: F = " << num(fs.at("statistic"), "%.2f") << ", p = " << pval(fs.at("p_value"))
        << " (" << fs.at("payload").at("flag").get<std::string>() << ")\n\n";

    const Json& ex = v.at("step3_exogeneity");
    out << "Step 3. Exogeneity (HSIC, instrument vs first-stage residual): stat = " << num(ex.at("statistic"), "%.6f")
        << ", p = " << pval(ex.at("p_value")) << "  " << decision_label(ex) << "\n\n";

    const Json& m = v.at("step4_structure");
    out << "Step 4. DirectLiNGAM ordering:";
    for (const auto& name : m.at("order")) out << ' ' << name.get<std::string>();
    out << (m.at("consistent_with_iv").get<bool>() ? " (consistent with IV)" : " (inconsistent with IV)") << '\n';
    out << "  alpha_zx = " << num(m.at("alpha_zx")) << ", alpha_xy = " << num(m.at("alpha_xy"))
        << ", alpha_zy = " << num(m.at("alpha_zy")) << "\n\n";

    out << "Step 5. Exclusion restriction tests\n";
    render_exclusion(out, v.at("step5_exclusion"));
    out << '\n';

    const Json& c = v.at("step6_comparison");
    out << "Step 6. Comparison: LiNGAM alpha_xy = " << num(c.at("lingam_alpha_xy")) << ", 2SLS = "
        << num(c.at("tsls_beta")) << " (se " << num(c.at("tsls_se")) << "), gap = " << num(c.at("gap")) << '\n';

    if (!v.at("warnings").empty()) {
        out << "\nWarnings\n";
        for (const auto& w : v.at("warnings"))
            out << "  [step " << w.at("step").get<int>() << "] " << w.at("code").get<std::string>() << ": "
                << w.at("message").get<std::string>() << '\n';
    }
}

void render_multi(std::ostringstream& out, const Json& v) {
    out << "Bonferroni: K = " << v.at("k").get<std::size_t>() << ", alpha = " << num(v.at("alpha"), "%g")
        << ", alpha_adj = " << num(v.at("alpha_adj"), "%g") << "\n\n";
    for (const auto& inst : v.at("instruments")) {
        out << "Instrument " << inst.at("instrument").get<std::string>() << ": alpha_zy_hat = "
            << num(inst.at("alpha_zy_hat"))
            << (inst.at("ordering_consistent").get<bool>() ? "" : "  [ordering inconsistent with IV]") << '\n';
        if (!inst.at("error").is_null()) {
            out << "  error: " << inst.at("error").get<std::string>() << "\n\n";
            continue;
        }
        outcome_rows(out, inst.at("outcomes"));
        out << "  rejections: " << inst.at("rejections").get<std::size_t>() << "/" << inst.at("outcomes").size()
            << "\n\n";
    }
    out << "Final label: " << v.at("label").get<std::string>() << '\n';
}

std::string column_label(TestKind k) {
    switch (k) {
        case TestKind::BootstrapPercentile: return "Boots";
        case TestKind::AsymptoticNormal: return "Asympt.";
        case TestKind::Permutation: return "Perm";
        case TestKind::LikelihoodRatio: return "LR";
        case TestKind::HSIC: return "HSIC";
        default: return std::string(to_string(k));
    }
}

void render_power(std::ostringstream& out, const Json& v) {
    const Json& tests = v.at("tests").at("tests");
    out << "Rejection rates at alpha = " << num(v.at("tests").at("alpha"), "%g") << ", "
        << v.at("reps").get<std::size_t>() << " replications per cell\n\n";
    out << pad("alpha_zy", 10) << pad("n", 7, true);
    for (const auto& t : tests) out << pad(column_label(get_test(t)), 9, true);
    out << '\n';
    for (const auto& cell : v.at("cells")) {
        out << pad(num(cell.at("alpha_zy"), "%g"), 10) << pad(std::to_string(cell.at("n").get<std::size_t>()), 7, true);
        for (const auto& r : cell.at("rates")) out << pad(num(r.at("rate"), "%.3f"), 9, true);
        if (cell.at("failed").get<std::size_t>() > 0)
            out << "  (" << cell.at("failed").get<std::size_t>() << " failed)";
        out << '\n';
    }
}

}  // namespace

std::string render(const Json& envelope) {
    std::ostringstream out;
    const auto kind = envelope.at("kind").get<std::string>();
    const Json& body = envelope.at("body");
    if (kind == "exclusion") {
        out << "Exclusion restriction tests (H0: alpha_zy = 0)\n";
        render_exclusion(out, body);
    } else if (kind == "protocol") {
        out << "IV validation protocol\n\n";
        render_protocol(out, body);
    } else if (kind == "multi_instrument") {
        out << "Multiple-instrument validation\n";
        render_multi(out, body);
    } else if (kind == "power") {
        out << "Power analysis\n";
        render_power(out, body);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown report kind '" + kind + "'");
    }
    out << "\nseed " << envelope.at("master_seed").get<std::uint64_t>() << ", ivlingam "
        << envelope.at("tool_version").get<std::string>() << '\n';
    return out.str();
}

}  // namespace ivlingam
