#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ivlingam/csv.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/extests.hpp"
#include "ivlingam/protocol.hpp"
#include "ivlingam/report.hpp"
#include "ivlingam/simulate.hpp"

namespace ivlingam::cli {

namespace {

/// Bad flags or settings; maps to exit code 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RoleFlags {
    std::string csv;
    std::vector<std::string> z;
    std::string x;
    std::string y;
};

struct TestFlags {
    double alpha = 0.05;
    std::size_t bootstrap = 1000;
    std::size_t permutations = 1000;
};

void add_role_flags(CLI::App& app, RoleFlags& roles, bool many_instruments) {
    app.add_option("csv", roles.csv, "Input CSV with a header row")->required();
    auto* z = app.add_option("--z", roles.z, many_instruments ? "Instrument column (repeatable)" : "Instrument column")
                  ->required();
    if (!many_instruments) z->expected(1);
    app.add_option("--x", roles.x, "Treatment column")->required();
    app.add_option("--y", roles.y, "Outcome column")->required();
}

void add_test_flags(CLI::App& app, TestFlags& flags) {
    app.add_option("--alpha", flags.alpha, "Significance level")->capture_default_str();
    app.add_option("--bootstrap,-B", flags.bootstrap, "Bootstrap replicates")->capture_default_str();
    app.add_option("--permutations,-R", flags.permutations, "Permutations")->capture_default_str();
}

ExclusionConfig exclusion_config(const TestFlags& flags) {
    ExclusionConfig config;
    config.alpha = flags.alpha;
    config.bootstrap = flags.bootstrap;
    config.permutations = flags.permutations;
    try {
        validate(config);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return config;
}

Dataset load(const RoleFlags& roles) {
    RoleMap map;
    for (const auto& z : roles.z) map.emplace_back(z, Role::Instrument);
    map.emplace_back(roles.x, Role::Treatment);
    map.emplace_back(roles.y, Role::Outcome);
    return load_csv(roles.csv, map);
}

Json roles_json(const RoleFlags& roles) {
    return Json{{"csv", roles.csv}, {"z", roles.z}, {"x", roles.x}, {"y", roles.y}};
}

template <class T>
T parse_number(const std::string& text) {
    if (text.empty()) throw std::invalid_argument(text);
    std::size_t used = 0;
    T value{};
    if constexpr (std::is_floating_point_v<T>) {
        value = std::stod(text, &used);
    } else {
        if (text.front() == '-') throw std::invalid_argument(text);
        value = static_cast<T>(std::stoull(text, &used));
    }
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

void emit(const ReportEnvelope& envelope, const std::string& json_path, std::ostream& out) {
    const Json j = envelope;
    out << render(j);
    if (!json_path.empty()) write_file(json_path, j.dump(2) + "\n");
}

ReportEnvelope envelope_for(std::uint64_t seed, Json config, ReportBody body) {
    ReportEnvelope e;
    e.timestamp = utc_timestamp();
    e.master_seed = seed;
    e.config = std::move(config);
    e.body = std::move(body);
    return e;
}

/// Comma-separated numbers; an empty list or a malformed entry is a config error.
template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
    std::vector<T> values;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(parse_number<T>(CLI::detail::trim_copy(item)));
        } catch (const std::exception&) {
            throw ConfigError(std::string(flag) + ": cannot read '" + item + "' as a number");
        }
    }
    if (values.empty()) throw ConfigError(std::string(flag) + " must not be empty");
    return values;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exclusion-restriction tests for instrumental variables via DirectLiNGAM", "ivlingam"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));

    std::uint64_t seed = 1;
    std::string json_path;
    std::function<void()> action;

    // test
    RoleFlags test_roles;
    TestFlags test_flags;
    auto* test = app.add_subcommand("test", "Five exclusion-restriction tests on one instrument");
    add_role_flags(*test, test_roles, false);
    add_test_flags(*test, test_flags);
    test->add_option("--seed", seed, "Master seed")->capture_default_str();
    test->add_option("--json", json_path, "Write the JSON report here");
    test->callback([&] {
        action = [&] {
            const ExclusionConfig config = exclusion_config(test_flags);
            const Dataset data = load(test_roles);
            const ExclusionVerdict verdict = run_all(data.role_columns(), config, RandomSource(seed));
            Json echo{{"command", "test"}, {"data", roles_json(test_roles)}, {"exclusion", config}};
            emit(envelope_for(seed, std::move(echo), verdict), json_path, out);
        };
    });

    // protocol
    RoleFlags protocol_roles;
    TestFlags protocol_flags;
    std::size_t exogeneity_permutations = 1000;
    auto* protocol = app.add_subcommand("protocol", "Six-step validation; several --z run the Bonferroni variant");
    add_role_flags(*protocol, protocol_roles, true);
    add_test_flags(*protocol, protocol_flags);
    protocol->add_option("--exogeneity-permutations", exogeneity_permutations, "Permutations for the exogeneity check")
        ->capture_default_str();
    protocol->add_option("--seed", seed, "Master seed")->capture_default_str();
    protocol->add_option("--json", json_path, "Write the JSON report here");
    protocol->callback([&] {
        action = [&] {
            ExclusionConfig config = exclusion_config(protocol_flags);
            if (exogeneity_permutations < 99) throw ConfigError("--exogeneity-permutations must be at least 99");
            const Dataset data = load(protocol_roles);
            const RandomSource rng(seed);
            Json echo{{"command", "protocol"}, {"data", roles_json(protocol_roles)}};
            if (data.instrument_count() == 1) {
                const ProtocolConfig pc{config, exogeneity_permutations};
                echo["exclusion"] = config;
                echo["exogeneity_permutations"] = exogeneity_permutations;
                emit(envelope_for(seed, std::move(echo), run_protocol(data, pc, rng)), json_path, out);
            } else {
                config.tests = multi_iv_tests();
                echo["exclusion"] = config;
                MultiIvReport report = run_multi_instrument(data, config.alpha, config, rng);
                emit(envelope_for(seed, std::move(echo), std::move(report)), json_path, out);
            }
        };
    });

    // simulate
    SimulationSpec spec;
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "Generate a dataset from the structural IV model");
    simulate->add_option("--n", spec.n, "Rows")->capture_default_str();
    simulate->add_option("--alpha-zx", spec.alpha_zx, "Instrument -> treatment")->capture_default_str();
    simulate->add_option("--alpha-xy", spec.alpha_xy, "Treatment -> outcome")->capture_default_str();
    simulate->add_option("--alpha-zy", spec.alpha_zy, "Instrument -> outcome (violation)")->capture_default_str();
    simulate->add_option("--df", spec.df, "Student-t degrees of freedom")->capture_default_str();
    simulate->add_flag("--gaussian", spec.gaussian, "Gaussian errors instead of t(df)");
    simulate->add_option("--seed", seed, "Master seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "Output CSV (default: standard output)");
    simulate->callback([&] {
        action = [&] {
            spec.seed = seed;
            try {
                validate(spec);
            } catch (const Error& e) {
                throw ConfigError(e.what());
            }
            const Dataset data = generate(spec);
            if (sim_out.empty()) {
                write_csv(out, data);
            } else {
                save_csv(sim_out, data);
            }
        };
    });

    // power
    std::string alpha_grid_text = "0,0.1,0.2,0.3,0.5";
    std::string n_grid_text = "100,250,500,1000";
    std::size_t reps = kDefaultPowerReps;
    SimulationSpec power_base;
    TestFlags power_flags{0.05, 200, 200};
    std::string power_out;
    auto* power = app.add_subcommand("power", "Monte Carlo rejection rates over a grid");
    power->add_option("--grid-alpha-zy", alpha_grid_text, "Comma-separated violation sizes")->capture_default_str();
    power->add_option("--grid-n", n_grid_text, "Comma-separated sample sizes")->capture_default_str();
    power->add_option("--reps", reps, "Replications per cell")->capture_default_str();
    power->add_option("--alpha-zx", power_base.alpha_zx, "Instrument -> treatment")->capture_default_str();
    power->add_option("--alpha-xy", power_base.alpha_xy, "Treatment -> outcome")->capture_default_str();
    power->add_option("--df", power_base.df, "Student-t degrees of freedom")->capture_default_str();
    add_test_flags(*power, power_flags);
    power->add_option("--seed", seed, "Master seed")->capture_default_str();
    power->add_option("--out", power_out, "Write the rejection rates as CSV here");
    power->add_option("--json", json_path, "Write the JSON report here");
    power->callback([&] {
        action = [&] {
            const auto alpha_grid = parse_list<double>(alpha_grid_text, "--grid-alpha-zy");
            const auto n_grid = parse_list<std::size_t>(n_grid_text, "--grid-n");
            if (reps == 0) throw ConfigError("--reps must be positive");
            const ExclusionConfig config = exclusion_config(power_flags);
            for (std::size_t n : n_grid) {
                SimulationSpec s = power_base;
                s.n = n;
                try {
                    validate(s);
                } catch (const Error& e) {
                    throw ConfigError(e.what());
                }
            }
            const PowerTable table = power_analysis(alpha_grid, n_grid, reps, power_base, config, RandomSource(seed));
            Json echo{{"command", "power"},
                      {"grid_alpha_zy", alpha_grid},
                      {"grid_n", n_grid},
                      {"reps", reps},
                      {"base", power_base},
                      {"exclusion", config}};
            emit(envelope_for(seed, std::move(echo), table), json_path, out);
            if (!power_out.empty()) {
                std::ostringstream csv;
                write_power_csv(csv, table);
                write_file(power_out, csv.str());
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) return kExitOk;
        if (e.get_name() != "CallForHelp") err << app.help();
        return kExitConfigError;
    }

    try {
        action();
    } catch (const ConfigError& e) {
        err << "ivlingam: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const Error& e) {
        err << "ivlingam: " << e.what() << '\n';
        // one column named by two role flags is a usage mistake, not bad data
        return e.code() == ErrorCode::DuplicateRole ? kExitConfigError : kExitDataError;
    }
    return kExitOk;
}

}  // namespace ivlingam::cli
