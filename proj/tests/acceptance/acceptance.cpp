// Acceptance checks. One PASS/FAIL line per criterion; exit status is 1 when
// any criterion fails. Pass criterion numbers as arguments to run a subset.
// The optional real-data check reads IVLINGAM_CARD_CSV (columns nearc4, educ,
// lwage) and is reported as SKIP when the variable is unset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ivlingam/csv.hpp"
#include "ivlingam/extests.hpp"
#include "ivlingam/hsic.hpp"
#include "ivlingam/lingam.hpp"
#include "ivlingam/normality.hpp"
#include "ivlingam/parallel.hpp"
#include "ivlingam/protocol.hpp"
#include "ivlingam/regress.hpp"
#include "ivlingam/report.hpp"
#include "ivlingam/simulate.hpp"
#include "oracles.hpp"

using namespace ivlingam;

namespace {

enum class Status { Pass, Fail, Skip };

struct Verdict {
    Status status;
    std::string detail;
};

Verdict check(bool ok, std::string detail) { return {ok ? Status::Pass : Status::Fail, std::move(detail)}; }

std::string fmt(const char* format, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

std::string rate_list(const PowerCell& cell) {
    std::string s;
    for (const auto& r : cell.rates) s += std::string(to_string(r.test)) + "=" + fmt("%.3f", r.rate) + " ";
    if (cell.failed) s += "failed=" + std::to_string(cell.failed) + " ";
    return s;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

const RandomSource kMaster(20240611);
const std::vector<double> kAlphaGrid{0.0, 0.1, 0.2, 0.3, 0.5};
constexpr std::size_t kPowerReps = 200;

/// The n = 500 power grid shared by the size, power and monotonicity checks.
const PowerTable& power_grid() {
    static const PowerTable table = [] {
        ExclusionConfig config;
        config.bootstrap = 200;
        config.permutations = 200;
        return power_analysis(kAlphaGrid, {500}, kPowerReps, SimulationSpec{}, config, kMaster.derive("power", 0));
    }();
    return table;
}

Verdict size_control() {
    const PowerCell& cell = *power_grid().find(0.0, 500);
    bool ok = cell.failed == 0;
    for (const auto& r : cell.rates) ok = ok && r.rate <= 0.10;
    return check(ok, rate_list(cell) + "(each <= 0.10)");
}

Verdict large_violation_power() {
    const PowerCell& cell = *power_grid().find(0.5, 500);
    bool ok = true;
    for (TestKind k : {TestKind::Permutation, TestKind::LikelihoodRatio, TestKind::HSIC})
        ok = ok && cell.find(k)->rate >= 0.95 - 0.05;
    return check(ok, rate_list(cell) + "(Permutation, LR, HSIC >= 0.90)");
}

Verdict moderate_violation_power() {
    const PowerCell& cell = *power_grid().find(0.2, 500);
    const auto strong = std::count_if(cell.rates.begin(), cell.rates.end(), [](const PowerRate& r) { return r.rate >= 0.5; });
    return check(strong >= 4, rate_list(cell) + "(" + std::to_string(strong) + "/5 >= 0.50, need 4)");
}

Verdict monotonicity() {
    bool ok = true;
    std::string detail;
    for (TestKind k : {TestKind::LikelihoodRatio, TestKind::Permutation}) {
        detail += std::string(to_string(k)) + ":";
        double prev = -1.0;
        for (double a : kAlphaGrid) {
            const double r = power_grid().find(a, 500)->find(k)->rate;
            detail += " " + fmt("%.3f", r);
            if (prev >= 0.0) ok = ok && r >= prev - 0.05;
            prev = r;
        }
        detail += "  ";
    }
    return check(ok, detail);
}

Verdict hsic_oracle() {
    std::mt19937_64 engine(kMaster.stream("hsic-oracle")());
    double worst = 0.0;
    for (int pair = 0; pair < 50; ++pair) {
        const std::size_t n = 8 + engine() % 57;  // 8..64
        std::vector<double> x(n), y(n);
        std::student_t_distribution<double> t(4.0);
        std::normal_distribution<double> g;
        const double dep = (pair % 3) * 0.5;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = t(engine);
            y[i] = g(engine) + dep * x[i] * x[i];
        }
        worst = std::max(worst, std::abs(hsic_statistic(x, y) - oracle::hsic(x, y)));
    }
    return check(worst <= 1e-10, "max |library - four-index oracle| = " + fmt("%.3g", worst) + " over 50 pairs");
}

Verdict exact_permutation() {
    std::size_t cases = 0;
    std::size_t matches = 0;
    for (std::size_t n : {5u, 6u, 7u}) {
        for (std::uint64_t s = 0; s < 3; ++s) {
            SimulationSpec spec;
            spec.n = n;
            spec.alpha_zy = 0.4 * static_cast<double>(s);
            const Dataset d = [&] {
                // simulate() needs n >= 10; draw errors directly for tiny samples
                Engine e = kMaster.derive("exact", n).stream("data", s);
                const auto ez = draw_errors(spec, n, e);
                const auto ex = draw_errors(spec, n, e);
                const auto ey = draw_errors(spec, n, e);
                std::vector<double> z(n), x(n), y(n);
                for (std::size_t i = 0; i < n; ++i) {
                    z[i] = ez[i];
                    x[i] = spec.alpha_zx * z[i] + ex[i];
                    y[i] = spec.alpha_xy * x[i] + spec.alpha_zy * z[i] + ey[i];
                }
                return Dataset({{"z", Role::Instrument, z}, {"x", Role::Treatment, x}, {"y", Role::Outcome, y}});
            }();
            const auto& z = d.instrument().values;
            const auto& x = d.treatment().values;

            const double perm_expected = oracle::exhaustive_p(
                z, [&](const std::vector<double>& zz) { return std::abs(direct_lingam(d.with_values(0, zz)).iv_effects().alpha_zy); },
                kPermutationTieTolerance);
            ++cases;
            matches += permutation_test_exhaustive(d).p_value == perm_expected;

            const double hsic_expected = oracle::exhaustive_p(
                x, [&](const std::vector<double>& xx) { return oracle::hsic(z, xx); }, kPermutationTieTolerance);
            ++cases;
            matches += hsic_test_exhaustive(z, x).permutation_p == hsic_expected;
        }
    }
    return check(matches == cases, std::to_string(matches) + "/" + std::to_string(cases) +
                                       " exhaustive p-values equal the enumeration oracle (n = 5, 6, 7)");
}

Verdict lingam_recovery() {
    constexpr std::size_t seeds = 100;
    std::vector<double> zy(seeds), xy(seeds);
    std::vector<char> ordered(seeds);
    SimulationSpec spec;
    spec.n = 2000;
    spec.alpha_zy = 0.3;
    parallel_for(seeds, [&](std::size_t s) {
        const IvEffects e = direct_lingam(generate(spec, kMaster.derive("recovery", s))).iv_effects();
        ordered[s] = e.consistent;
        zy[s] = std::abs(e.alpha_zy - 0.3);
        xy[s] = std::abs(e.alpha_xy - 0.5);
    });
    const auto hits = std::count(ordered.begin(), ordered.end(), 1);
    const double mzy = median(zy);
    const double mxy = median(xy);
    return check(hits >= 95 && mzy <= 0.05 && mxy <= 0.05,
                 "ordering (z,x,y) in " + std::to_string(hits) + "/100; median |a_zy - 0.3| = " + fmt("%.4f", mzy) +
                     "; median |a_xy - 0.5| = " + fmt("%.4f", mxy));
}

Verdict tsls_alignment() {
    constexpr std::size_t seeds = 100;
    std::vector<double> gap(seeds);
    SimulationSpec spec;
    spec.n = 2000;
    parallel_for(seeds, [&](std::size_t s) {
        const Dataset d = generate(spec, kMaster.derive("alignment", s));
        gap[s] = std::abs(direct_lingam(d).iv_effects().alpha_xy - tsls(d).coefficients.front());
    });
    const double m = median(gap);
    return check(m <= 0.05, "median |a_xy(lingam) - b(2SLS)| = " + fmt("%.4f", m) + " (<= 0.05)");
}

Verdict normality_calibration() {
    constexpr std::size_t seeds = 500;
    std::size_t size_rejects = 0;
    std::size_t power_rejects = 0;
    SimulationSpec gauss;
    gauss.gaussian = true;
    SimulationSpec t5;
    for (std::size_t s = 0; s < seeds; ++s) {
        Engine e = kMaster.derive("normality", s).stream("draws");
        size_rejects += jarque_bera(draw_errors(gauss, 1000, e)).rejected();
        power_rejects += jarque_bera(draw_errors(t5, 1000, e)).rejected();
    }
    const double size = static_cast<double>(size_rejects) / seeds;
    const double power = static_cast<double>(power_rejects) / seeds;
    return check(size >= 0.02 && size <= 0.09 && power >= 0.95,
                 "JB size " + fmt("%.3f", size) + " in [0.02, 0.09]; power on t(5) " + fmt("%.3f", power) + " >= 0.95");
}

Verdict gaussian_negative_control() {
    constexpr std::size_t seeds = 400;
    std::vector<char> z_first(seeds);
    SimulationSpec spec;
    spec.gaussian = true;
    parallel_for(seeds, [&](std::size_t s) {
        Engine e = kMaster.derive("negative-control", s).stream("draws");
        const auto z = draw_errors(spec, spec.n, e);
        auto x = draw_errors(spec, spec.n, e);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += spec.alpha_zx * z[i];
        z_first[s] = find_root({z, x}).front().candidate == 0;
    });
    const double share = static_cast<double>(std::count(z_first.begin(), z_first.end(), 1)) / seeds;
    return check(share >= 0.45 && share <= 0.55, "root = z in " + fmt("%.4f", share) + " of 400 seeds (0.45-0.55)");
}

Verdict bonferroni_benchmark() {
    constexpr std::size_t seeds = 100;
    ExclusionConfig config;
    config.bootstrap = 200;
    config.permutations = 200;
    config.tests = multi_iv_tests();
    std::size_t all_reject = 0;
    std::size_t strong = 0;
    std::vector<std::size_t> per_test(6, 0);
    for (std::size_t s = 0; s < seeds; ++s) {
        const RandomSource rng = kMaster.derive("bonferroni", s);
        const Dataset d = generate_two_instruments(SimulationSpec{}, 0.5, 0.5, rng.derive("data", 0));
        const MultiIvReport r = run_multi_instrument(d, 0.05, config, rng.derive("tests", 0));
        bool all = r.alpha_adj == 0.025;
        for (std::size_t i = 0; i < r.instruments.size(); ++i) {
            const auto& inst = r.instruments[i];
            all = all && !inst.error && inst.outcomes.size() == 3;
            for (std::size_t t = 0; t < inst.outcomes.size(); ++t) {
                per_test[3 * i + t] += inst.outcomes[t].rejected();
                all = all && inst.outcomes[t].rejected();
            }
        }
        all_reject += all;
        strong += r.label == MultiIvLabel::StrongViolation;
    }
    std::string detail = "all six Reject in " + std::to_string(all_reject) + "/100 (need 95); per test z1 B/LR/HSIC, z2 B/LR/HSIC:";
    for (std::size_t c : per_test) detail += " " + std::to_string(c);
    detail += "; Strong Violation label " + std::to_string(strong) + "/100";
    return check(all_reject >= 95, detail);
}

Verdict determinism() {
    const std::string dir = "ivlingam-acceptance-determinism";
    std::filesystem::create_directories(dir);
    {
        SimulationSpec spec;
        spec.alpha_zy = 0.2;
        spec.n = 300;
        save_csv(dir + "/one.csv", generate(spec, kMaster.derive("determinism", 0)));
        save_csv(dir + "/two.csv", generate_two_instruments(spec, 0.3, 0.0, kMaster.derive("determinism", 1)));
    }
    const std::vector<std::vector<std::string>> commands{
        {"test", dir + "/one.csv", "--z", "z", "--x", "x", "--y", "y", "-B", "199", "-R", "199", "--seed", "11"},
        {"protocol", dir + "/one.csv", "--z", "z", "--x", "x", "--y", "y", "-B", "199", "-R", "199",
         "--exogeneity-permutations", "199", "--seed", "11"},
        {"protocol", dir + "/two.csv", "--z", "z1", "--z", "z2", "--x", "x", "--y", "y", "-B", "199", "-R", "199",
         "--seed", "11"},
        {"power", "--grid-alpha-zy", "0,0.3", "--grid-n", "100", "--reps", "4", "-B", "99", "-R", "99", "--seed", "11"},
    };
    auto body = [&](const std::vector<std::string>& command, std::size_t threads, int repeat) {
        set_thread_limit(threads);
        const std::string out = dir + "/r" + std::to_string(threads) + "_" + std::to_string(repeat) + ".json";
        std::vector<std::string> args{"ivlingam"};
        args.insert(args.end(), command.begin(), command.end());
        args.push_back("--json");
        args.push_back(out);
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream sink;
        if (cli::run(static_cast<int>(argv.size()), argv.data(), sink, sink) != 0) return std::string("<error>");
        std::ifstream in(out);
        return Json::parse(in).at("body").dump();
    };
    std::size_t identical = 0;
    for (const auto& command : commands) {
        const std::string reference = body(command, 1, 0);
        bool same = reference != "<error>";
        same = same && body(command, 1, 1) == reference;
        same = same && body(command, 4, 0) == reference;
        same = same && body(command, 8, 0) == reference;
        identical += same;
    }
    set_thread_limit(0);
    std::filesystem::remove_all(dir);
    return check(identical == commands.size(), std::to_string(identical) + "/" + std::to_string(commands.size()) +
                                                   " commands byte-identical across repeats and 1/4/8 threads");
}

Verdict card_replication() {
    const char* path = std::getenv("IVLINGAM_CARD_CSV");
    if (!path || !*path) return {Status::Skip, "IVLINGAM_CARD_CSV not set; external data not bundled"};
    const Dataset d =
        load_csv(path, {{"nearc4", Role::Instrument}, {"educ", Role::Treatment}, {"lwage", Role::Outcome}});
    const double f = first_stage_f(d).statistic;
    const double beta = tsls(d).coefficients.front();
    ExclusionConfig config;
    config.bootstrap = 100;
    config.permutations = 100;
    const ExclusionVerdict v = run_all(d, config, kMaster.derive("card", 0));
    const bool pattern = !v.find(TestKind::BootstrapPercentile)->rejected() &&
                         !v.find(TestKind::Permutation)->rejected() &&
                         !v.find(TestKind::LikelihoodRatio)->rejected() && v.find(TestKind::HSIC)->rejected();
    return check(d.rows() == 4739 && std::abs(f - 41.49) <= 0.5 && std::abs(beta - 0.0012) <= 0.0005 && pattern,
                 "n = " + std::to_string(d.rows()) + ", F = " + fmt("%.2f", f) + ", 2SLS = " + fmt("%.4f", beta) +
                     ", rejections " + std::to_string(v.rejections) + "/5");
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "size control at alpha_zy = 0, n = 500", size_control},
        {2, "power at alpha_zy = 0.5, n = 500", large_violation_power},
        {3, "power at alpha_zy = 0.2, n = 500", moderate_violation_power},
        {4, "monotone power for LR and Permutation", monotonicity},
        {5, "HSIC statistic vs four-index oracle", hsic_oracle},
        {6, "exhaustive permutation p-values", exact_permutation},
        {7, "DirectLiNGAM recovery, n = 2000", lingam_recovery},
        {8, "LiNGAM / 2SLS alignment, n = 2000", tsls_alignment},
        {9, "Jarque-Bera calibration", normality_calibration},
        {10, "Gaussian negative control", gaussian_negative_control},
        {11, "Bonferroni double-violation benchmark", bonferroni_benchmark},
        {12, "determinism across repeats and threads", determinism},
        {13, "Card extract replication (optional)", card_replication},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {Status::Fail, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const char* tag = v.status == Status::Pass ? "PASS" : v.status == Status::Fail ? "FAIL" : "SKIP";
        failures += v.status == Status::Fail;
        std::printf("%s  criterion %2d  %s: %s [%.1fs]\n", tag, c.id, c.name, v.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures ? 1 : 0;
}
