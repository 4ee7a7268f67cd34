#include "ivlingam/lingam.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>

#include "gram_kernels.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/hsic.hpp"
#include "ivlingam/regress.hpp"

namespace ivlingam {

namespace {

struct WorkColumn {
    std::size_t variable = 0;  // index into the original columns
    std::vector<double> values;
};

std::vector<double> residualize(const std::vector<double>& target, const std::vector<double>& on) {
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < on.size(); ++t) {
        num += target[t] * on[t];
        den += on[t] * on[t];
    }
    if (!(den > 0.0)) throw Error(ErrorCode::DegenerateInput, "regressor has zero variance");
    const double beta = num / den;
    std::vector<double> r(target.size());
    for (std::size_t t = 0; t < r.size(); ++t) r[t] = target[t] - beta * on[t];
    // re-centre to remove drift from rounding
    const double m = mean(r);
    for (double& v : r) v -= m;
    return r;
}

struct CandidateResult {
    double score = 0.0;
    std::vector<WorkColumn> rest;  // other columns residualised on the candidate
};

double kernel_scale(const std::vector<double>& x) {
    const double bw = median_heuristic(x);
    return 0.5 / (bw * bw);
}

CandidateResult score_candidate(const std::vector<WorkColumn>& cols, std::size_t j) {
    const std::size_t n = cols[j].values.size();
    if (n > kMaxGramSize)
        throw Error(ErrorCode::NotSupported, "Gram matrices are limited to n <= " + std::to_string(kMaxGramSize));
    // strict upper triangle of the candidate's Gram matrix; the buffer is kept
    // per thread because fresh megabyte allocations cost a page fault per page
    thread_local std::vector<double> scratch;
    if (scratch.size() < n * (n - 1) / 2) scratch.resize(n * (n - 1) / 2);
    double* packed = scratch.data();
    std::vector<double> k_rows(n);
    detail::gaussian_gram_packed(cols[j].values.data(), n, kernel_scale(cols[j].values), packed, k_rows.data());
    double k_total = 0.0;
    for (double r : k_rows) k_total += r;

    CandidateResult out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i == j) continue;
        WorkColumn rest{cols[i].variable, residualize(cols[i].values, cols[j].values)};
        out.score += detail::hsic_streaming_packed(packed, k_rows.data(), k_total, rest.values.data(), n,
                                                   kernel_scale(rest.values));
        out.rest.push_back(std::move(rest));
    }
    return out;
}

std::vector<RootScore> sort_scores(std::vector<RootScore> scores) {
    std::sort(scores.begin(), scores.end(), [](const RootScore& a, const RootScore& b) {
        return a.score != b.score ? a.score < b.score : a.candidate < b.candidate;
    });
    // tied within tolerance: lowest index wins
    const double best = scores.front().score;
    auto winner = scores.begin();
    for (auto it = scores.begin(); it != scores.end() && it->score <= best + kRootTieTolerance; ++it) {
        if (it->candidate < winner->candidate) winner = it;
    }
    std::rotate(scores.begin(), winner, winner + 1);
    return scores;
}

std::vector<WorkColumn> centred_work(const Dataset& roles) {
    std::vector<WorkColumn> cols;
    for (std::size_t v = 0; v < roles.cols(); ++v) {
        const auto& values = roles.column(v).values;
        if (!(sample_variance(values) > 0.0))
            throw Error(ErrorCode::DegenerateInput, "column '" + roles.column(v).name + "' is constant");
        cols.push_back({v, centered(values)});
    }
    return cols;
}

void require_full_rank(const Dataset& roles) {
    const auto n = static_cast<Eigen::Index>(roles.rows());
    const auto p = static_cast<Eigen::Index>(roles.cols());
    Eigen::MatrixXd m(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto c = centered(roles.column(static_cast<std::size_t>(j)).values);
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = c[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) throw Error(ErrorCode::RankDeficient, "role columns are linearly dependent");
}

}  // namespace

std::vector<RootScore> find_root(const std::vector<std::vector<double>>& columns) {
    if (columns.size() < 2) throw Error(ErrorCode::InvalidArgument, "find_root needs at least two columns");
    std::vector<WorkColumn> cols;
    for (std::size_t v = 0; v < columns.size(); ++v) {
        if (columns[v].size() != columns.front().size())
            throw Error(ErrorCode::LengthMismatch, "columns differ in length");
        if (!(sample_variance(columns[v]) > 0.0))
            throw Error(ErrorCode::DegenerateInput, "column " + std::to_string(v) + " is constant");
        cols.push_back({v, centered(columns[v])});
    }
    std::vector<RootScore> scores;
    for (std::size_t j = 0; j < cols.size(); ++j) scores.push_back({j, score_candidate(cols, j).score});
    return sort_scores(std::move(scores));
}

std::vector<std::size_t> estimate_order(const Dataset& data) {
    const Dataset roles = data.role_columns();
    if (roles.rows() < 4) throw Error(ErrorCode::TooFewObservations, "DirectLiNGAM needs at least 4 rows");
    auto cols = centred_work(roles);
    require_full_rank(roles);

    std::vector<std::size_t> order;
    while (cols.size() > 1) {
        std::vector<RootScore> scores;
        std::vector<CandidateResult> results;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            results.push_back(score_candidate(cols, j));
            scores.push_back({j, results.back().score});
        }
        const std::size_t winner = sort_scores(std::move(scores)).front().candidate;
        order.push_back(cols[winner].variable);
        cols = std::move(results[winner].rest);
    }
    order.push_back(cols.front().variable);
    return order;
}

CausalModel fit_ordered(const Dataset& data, std::span<const std::size_t> order, bool restrict_outcome) {
    const Dataset roles = data.role_columns();
    const std::size_t p = roles.cols();
    if (order.size() != p) throw Error(ErrorCode::InvalidArgument, "ordering must list every role column once");

    CausalModel model;
    for (const auto& c : roles.columns()) {
        model.names.push_back(c.name);
        model.roles.push_back(c.role);
    }
    model.order.assign(order.begin(), order.end());
    model.b.assign(p * p, 0.0);
    model.residuals.resize(p);

    for (std::size_t pos = 0; pos < p; ++pos) {
        const std::size_t target = order[pos];
        std::vector<std::size_t> parents;
        for (std::size_t q = 0; q < pos; ++q) {
            const std::size_t source = order[q];
            if (restrict_outcome && model.roles[target] == Role::Outcome && model.roles[source] == Role::Instrument)
                continue;
            parents.push_back(source);
        }
        const auto& y = roles.column(target).values;
        if (parents.empty()) {
            model.residuals[target] = centered(y);
            continue;
        }
        std::vector<std::span<const double>> regressors;
        for (std::size_t s : parents) regressors.emplace_back(roles.column(s).values);
        OlsFit fit = ols(y, regressors);
        for (std::size_t k = 0; k < parents.size(); ++k) model.b[target * p + parents[k]] = fit.coefficients[k];
        model.residuals[target] = std::move(fit.residuals);
    }

    // instruments before the treatment before the outcome
    const std::size_t x_pos = model.position_of(roles.treatment_index());
    const std::size_t y_pos = model.position_of(roles.outcome_index());
    bool consistent = x_pos < y_pos;
    for (std::size_t z : roles.instrument_indices()) consistent = consistent && model.position_of(z) < x_pos;
    model.consistent_with_iv = consistent;
    return model;
}

CausalModel direct_lingam(const Dataset& data) {
    const auto order = estimate_order(data);
    return fit_ordered(data, order, false);
}

CausalModel restricted_lingam(const Dataset& data) {
    const auto order = estimate_order(data);
    return fit_ordered(data, order, true);
}

std::size_t CausalModel::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    throw Error(ErrorCode::MissingColumn, "model has no variable '" + std::string(name) + "'");
}

std::size_t CausalModel::position_of(std::size_t variable) const {
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (order[k] == variable) return k;
    }
    throw Error(ErrorCode::InvalidArgument, "variable not in ordering");
}

IvEffects CausalModel::iv_effects(std::size_t instrument) const {
    std::optional<std::size_t> z, x, y;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        if (roles[i] == Role::Instrument && seen++ == instrument) z = i;
        if (roles[i] == Role::Treatment) x = i;
        if (roles[i] == Role::Outcome) y = i;
    }
    if (!z || !x || !y) throw Error(ErrorCode::InvalidArgument, "model lacks an instrument/treatment/outcome");
    IvEffects e;
    e.alpha_zx = effect(*x, *z);
    e.alpha_xy = effect(*y, *x);
    e.alpha_zy = effect(*y, *z);
    e.consistent = consistent_with_iv;
    return e;
}

}  // namespace ivlingam
