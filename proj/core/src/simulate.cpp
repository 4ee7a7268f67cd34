#include "ivlingam/simulate.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/student_t_distribution.hpp>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "ivlingam/csv.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/parallel.hpp"

namespace ivlingam {

void validate(const SimulationSpec& spec) {
    if (spec.n < kMinSimulationRows)
        throw Error(ErrorCode::InvalidArgument, "simulation needs n >= " + std::to_string(kMinSimulationRows));
    if (!spec.gaussian && (!(spec.df > 2.0) || !std::isfinite(spec.df)))
        throw Error(ErrorCode::InvalidArgument, "t degrees of freedom must exceed 2");
    for (double a : {spec.alpha_zx, spec.alpha_xy, spec.alpha_zy}) {
        if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "coefficients must be finite");
    }
}

std::vector<double> draw_errors(const SimulationSpec& spec, std::size_t n, Engine& engine) {
    std::vector<double> e(n);
    if (spec.gaussian) {
        boost::random::normal_distribution<double> dist;
        for (double& v : e) v = dist(engine);
    } else {
        boost::random::student_t_distribution<double> dist(spec.df);
        for (double& v : e) v = dist(engine);
    }
    return e;
}

Dataset generate(const SimulationSpec& spec, const RandomSource& rng) {
    validate(spec);
    Engine ez = rng.stream("dgp.z");
    Engine ex = rng.stream("dgp.x");
    Engine ey = rng.stream("dgp.y");
    auto z = draw_errors(spec, spec.n, ez);
    auto x = draw_errors(spec, spec.n, ex);
    auto y = draw_errors(spec, spec.n, ey);
    for (std::size_t i = 0; i < spec.n; ++i) {
        x[i] += spec.alpha_zx * z[i];
        y[i] += spec.alpha_xy * x[i] + spec.alpha_zy * z[i];
    }
    return Dataset({{"z", Role::Instrument, std::move(z)},
                    {"x", Role::Treatment, std::move(x)},
                    {"y", Role::Outcome, std::move(y)}});
}

Dataset generate(const SimulationSpec& spec) { return generate(spec, RandomSource(spec.seed)); }

Dataset generate_two_instruments(const SimulationSpec& spec, double alpha_z1y, double alpha_z2y,
                                 const RandomSource& rng) {
    validate(spec);
    Engine e1 = rng.stream("dgp.z1");
    Engine e2 = rng.stream("dgp.z2");
    Engine ex = rng.stream("dgp.x");
    Engine ey = rng.stream("dgp.y");
    auto z1 = draw_errors(spec, spec.n, e1);
    auto z2 = draw_errors(spec, spec.n, e2);
    auto x = draw_errors(spec, spec.n, ex);
    auto y = draw_errors(spec, spec.n, ey);
    for (std::size_t i = 0; i < spec.n; ++i) {
        x[i] += spec.alpha_zx * (z1[i] + z2[i]);
        y[i] += spec.alpha_xy * x[i] + alpha_z1y * z1[i] + alpha_z2y * z2[i];
    }
    return Dataset({{"z1", Role::Instrument, std::move(z1)},
                    {"z2", Role::Instrument, std::move(z2)},
                    {"x", Role::Treatment, std::move(x)},
                    {"y", Role::Outcome, std::move(y)}});
}

const PowerRate* PowerCell::find(TestKind kind) const noexcept {
    for (const auto& r : rates) {
        if (r.test == kind) return &r;
    }
    return nullptr;
}

const PowerCell* PowerTable::find(double alpha_zy, std::size_t n) const noexcept {
    for (const auto& c : cells) {
        if (c.alpha_zy == alpha_zy && c.n == n) return &c;
    }
    return nullptr;
}

PowerTable power_analysis(const std::vector<double>& alpha_zy_grid, const std::vector<std::size_t>& n_grid,
                          std::size_t reps, const SimulationSpec& base, const ExclusionConfig& config,
                          const RandomSource& rng) {
    if (alpha_zy_grid.empty() || n_grid.empty()) throw Error(ErrorCode::InvalidArgument, "power grid is empty");
    if (reps < 1) throw Error(ErrorCode::InvalidArgument, "power analysis needs reps >= 1");
    validate(config);
    PowerTable table;
    table.base = base;
    table.tests = config;
    table.reps = reps;
    for (double a : alpha_zy_grid) {
        for (std::size_t n : n_grid) {
            SimulationSpec spec = base;
            spec.alpha_zy = a;
            spec.n = n;
            validate(spec);
            table.cells.push_back({a, n, {}, 0});
        }
    }

    const std::size_t k = config.tests.size();
    // per (cell, rep): 1 = reject, 0 = non-reject, -1 = no decision
    std::vector<signed char> decisions(table.cells.size() * reps * k, -1);
    std::vector<char> failed(table.cells.size() * reps, 0);
    parallel_for(table.cells.size() * reps, [&](std::size_t job) {
        const PowerCell& cell = table.cells[job / reps];
        const std::size_t r = job % reps;
        SimulationSpec spec = base;
        spec.alpha_zy = cell.alpha_zy;
        spec.n = cell.n;
        const RandomSource rep = rng.derive("power", cell.n).derive("rep", r);
        try {
            const ExclusionVerdict v = run_all(generate(spec, rep.derive("data", 0)), config, rep.derive("tests", 0));
            for (std::size_t t = 0; t < k; ++t) {
                const TestOutcome& o = v.outcomes[t];
                if (o.p_value) decisions[job * k + t] = o.rejected() ? 1 : 0;
            }
        } catch (const Error&) {
            failed[job] = 1;
        }
    });

    for (std::size_t c = 0; c < table.cells.size(); ++c) {
        PowerCell& cell = table.cells[c];
        for (std::size_t r = 0; r < reps; ++r) cell.failed += static_cast<std::size_t>(failed[c * reps + r]);
        for (std::size_t t = 0; t < k; ++t) {
            PowerRate rate;
            rate.test = config.tests[t];
            for (std::size_t r = 0; r < reps; ++r) {
                const signed char d = decisions[(c * reps + r) * k + t];
                if (d < 0) continue;
                ++rate.reps;
                rate.rejections += static_cast<std::size_t>(d);
            }
            rate.rate = rate.reps > 0 ? static_cast<double>(rate.rejections) / static_cast<double>(rate.reps) : 0.0;
            cell.rates.push_back(rate);
        }
    }
    return table;
}

void write_power_csv(std::ostream& out, const PowerTable& table) {
    out << "alpha_zy,n,test,rate,reps\n";
    for (const auto& cell : table.cells) {
        for (const auto& r : cell.rates) {
            out << format_double(cell.alpha_zy) << ',' << cell.n << ',' << to_string(r.test) << ','
                << format_double(r.rate) << ',' << r.reps << '\n';
        }
    }
}

}  // namespace ivlingam
