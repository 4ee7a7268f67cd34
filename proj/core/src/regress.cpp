#include "ivlingam/regress.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "distributions.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/hsic.hpp"

namespace ivlingam {

namespace {

std::size_t name_index(const std::vector<std::string>& names, std::string_view name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    throw Error(ErrorCode::InvalidArgument, "no coefficient named '" + std::string(name) + "'");
}

Eigen::MatrixXd centered_design(const std::vector<std::span<const double>>& cols, std::size_t n) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != n) throw Error(ErrorCode::LengthMismatch, "regressor length differs from response");
        const double m = mean(cols[j]);
        for (std::size_t i = 0; i < n; ++i) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j][i] - m;
    }
    return X;
}

Eigen::VectorXd centered_vector(std::span<const double> y) {
    const double m = mean(y);
    Eigen::VectorXd v(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) v(static_cast<Eigen::Index>(i)) = y[i] - m;
    return v;
}

void require_full_rank(const Eigen::MatrixXd& X) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    const double scale = X.cwiseAbs().maxCoeff();
    qr.setThreshold(1e-10);
    if (!(scale > 0.0) || qr.rank() < X.cols()) throw Error(ErrorCode::RankDeficient, "design matrix is not full rank");
}

}  // namespace

double OlsFit::coefficient(std::string_view name) const { return coefficients[name_index(names, name)]; }

double OlsFit::standard_error(std::string_view name) const { return se[name_index(names, name)]; }

OlsFit ols(std::span<const double> y, const std::vector<std::span<const double>>& regressors,
           std::vector<std::string> names) {
    const std::size_t n = y.size();
    const std::size_t k = regressors.size();
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "ols needs at least one regressor");
    if (n <= k + 1)
        throw Error(ErrorCode::TooFewObservations,
                    "ols needs more than " + std::to_string(k + 1) + " observations");
    if (names.empty()) {
        for (std::size_t j = 0; j < k; ++j) names.push_back("x" + std::to_string(j + 1));
    }
    if (names.size() != k) throw Error(ErrorCode::InvalidArgument, "one name per regressor");

    const Eigen::MatrixXd X = centered_design(regressors, n);
    const Eigen::VectorXd yc = centered_vector(y);
    require_full_rank(X);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    const Eigen::VectorXd beta = qr.solve(yc);
    const Eigen::VectorXd resid = yc - X * beta;

    OlsFit fit;
    fit.names = std::move(names);
    fit.coefficients.assign(beta.data(), beta.data() + k);
    fit.residuals.assign(resid.data(), resid.data() + n);
    fit.df_model = k;
    fit.df_resid = n - k - 1;

    const double sse = resid.squaredNorm();
    const double sst = yc.squaredNorm();
    fit.sigma2 = sse / static_cast<double>(fit.df_resid);
    fit.r2 = sst > 0.0 ? std::clamp(1.0 - sse / sst, 0.0, 1.0) : 0.0;
    const double ssm = std::max(sst - sse, 0.0);
    fit.f_statistic = sse > 0.0 ? (ssm / static_cast<double>(k)) / fit.sigma2
                                : std::numeric_limits<double>::infinity();

    const Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
    fit.se.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        fit.se[j] = std::sqrt(fit.sigma2 * xtx_inv(jj, jj));
    }
    return fit;
}

TestOutcome first_stage_f(const Dataset& data, double alpha) {
    std::vector<std::span<const double>> z;
    std::vector<std::string> names;
    for (std::size_t idx : data.instrument_indices()) {
        z.emplace_back(data.column(idx).values);
        names.push_back(data.column(idx).name);
    }
    const OlsFit fit = ols(data.treatment().values, z, names);

    TestOutcome out;
    out.test = TestKind::FirstStageF;
    out.statistic = fit.f_statistic;
    out.p_value = detail::f_sf(fit.f_statistic, static_cast<double>(fit.df_model), static_cast<double>(fit.df_resid));
    out.alpha = alpha;
    out.decision = decide(*out.p_value, alpha);
    out.payload.variable = data.treatment().name;
    out.payload.df1 = static_cast<double>(fit.df_model);
    out.payload.df2 = static_cast<double>(fit.df_resid);
    out.payload.flag = fit.f_statistic < kWeakInstrumentThreshold ? "weak" : "strong";
    return out;
}

std::vector<TestOutcome> exogeneity_check(const Dataset& data, std::size_t permutations, const RandomSource& rng,
                                          double alpha) {
    std::vector<std::span<const double>> z;
    for (std::size_t idx : data.instrument_indices()) z.emplace_back(data.column(idx).values);
    const OlsFit first = ols(data.treatment().values, z);

    std::vector<TestOutcome> out;
    const auto instruments = data.instrument_indices();
    for (std::size_t k = 0; k < instruments.size(); ++k) {
        const Column& inst = data.column(instruments[k]);
        const HsicResult h = hsic_test(inst.values, first.residuals, permutations, rng.derive("exogeneity", k));
        TestOutcome o;
        o.test = TestKind::HSIC;
        o.statistic = h.statistic;
        o.p_value = h.permutation_p;
        o.alpha = alpha;
        o.decision = decide(h.permutation_p, alpha);
        o.payload.variable = inst.name;
        o.payload.resamples = permutations;
        o.payload.used = h.permutations_used;
        o.payload.notes.push_back("instrument vs first-stage residual of " + data.treatment().name);
        out.push_back(std::move(o));
    }
    return out;
}

OlsFit tsls(const Dataset& data) {
    const std::size_t n = data.rows();
    std::vector<std::span<const double>> z;
    for (std::size_t idx : data.instrument_indices()) z.emplace_back(data.column(idx).values);
    const std::size_t k = z.size();
    if (n <= k + 1) throw Error(ErrorCode::TooFewObservations, "too few observations for 2SLS");

    const Eigen::MatrixXd Z = centered_design(z, n);
    require_full_rank(Z);
    const Eigen::VectorXd x = centered_vector(data.treatment().values);
    const Eigen::VectorXd y = centered_vector(data.outcome().values);

    // first stage fitted values
    const Eigen::VectorXd xhat = Z * Z.colPivHouseholderQr().solve(x);
    const double sxx = xhat.dot(xhat);
    if (!(sxx > 1e-14 * std::max(1.0, x.squaredNorm())))
        throw Error(ErrorCode::RankDeficient, "first stage has no explanatory power");
    const double beta = xhat.dot(y) / xhat.dot(x);

    const Eigen::VectorXd resid = y - beta * x;
    OlsFit fit;
    fit.names = {data.treatment().name};
    fit.coefficients = {beta};
    fit.residuals.assign(resid.data(), resid.data() + n);
    fit.df_model = 1;
    fit.df_resid = n - 2;
    fit.sigma2 = resid.squaredNorm() / static_cast<double>(fit.df_resid);
    fit.se = {std::sqrt(fit.sigma2 / sxx)};
    const double sst = y.squaredNorm();
    fit.r2 = sst > 0.0 ? std::clamp(1.0 - resid.squaredNorm() / sst, 0.0, 1.0) : 0.0;
    fit.f_statistic = fit.se[0] > 0.0 ? (beta / fit.se[0]) * (beta / fit.se[0]) : std::numeric_limits<double>::infinity();
    return fit;
}

}  // namespace ivlingam
