#include "ivlingam/normality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "distributions.hpp"
#include "ivlingam/error.hpp"

namespace ivlingam {

namespace {

void require_variance(std::span<const double> x) {
    if (x.size() >= 2 && sample_variance(x) > 0.0) return;
    throw Error(ErrorCode::ZeroVariance, "sample has zero variance");
}

// c[0] + c[1] x + c[2] x^2 + ...
template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
    double r = 0.0;
    for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
    return r;
}

// Royston (1995), algorithm AS R94.
std::vector<double> shapiro_wilk_coefficients(std::size_t n) {
    const std::size_t half = n / 2;
    std::vector<double> a(half);
    if (n == 3) {
        a[0] = std::sqrt(0.5);
        return a;
    }
    constexpr std::array<double, 6> c1{0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    constexpr std::array<double, 6> c2{0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};

    const double an = static_cast<double>(n);
    std::vector<double> m(half);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        m[i] = detail::normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - m[0] / ssumm2;

    std::size_t first_plain;
    double fac;
    if (n > 5) {
        first_plain = 2;
        const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                        (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        a[1] = a2;
    } else {
        first_plain = 1;
        fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first_plain; i < half; ++i) a[i] = -m[i] / fac;
    return a;
}

double shapiro_wilk_pvalue(double w, std::size_t n) {
    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;   // 6/pi
        constexpr double stqr = 1.04719755119660;  // pi/3
        return std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
    }
    constexpr std::array<double, 2> g{-2.273, 0.459};
    constexpr std::array<double, 4> c3{0.544, -0.39978, 0.025054, -6.714e-4};
    constexpr std::array<double, 4> c4{1.3822, -0.77857, 0.062767, -0.0020322};
    constexpr std::array<double, 4> c5{-1.5861, -0.31082, -0.083751, 0.0038915};
    constexpr std::array<double, 3> c6{-0.4803, -0.082676, 0.0030302};

    const double an = static_cast<double>(n);
    if (w >= 1.0) return 1.0;
    double y = std::log(1.0 - w);
    double m;
    double s;
    if (n <= 11) {
        const double gamma = poly(g, an);
        if (y >= gamma) return 1e-99;
        y = -std::log(gamma - y);
        m = poly(c3, an);
        s = std::exp(poly(c4, an));
    } else {
        const double xx = std::log(an);
        m = poly(c5, xx);
        s = std::exp(poly(c6, xx));
    }
    return detail::normal_sf((y - m) / s);
}

}  // namespace

MomentSummary moments(std::span<const double> x) {
    MomentSummary out;
    out.n = x.size();
    if (x.empty()) return out;
    out.mean = mean(x);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - out.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(x.size());
    m2 /= n;
    m3 /= n;
    m4 /= n;
    out.sd = std::sqrt(m2);
    if (m2 > 0.0) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.kurtosis = m4 / (m2 * m2);
    }
    return out;
}

TestOutcome jarque_bera(std::span<const double> x, double alpha) {
    if (x.size() < 8)
        throw Error(ErrorCode::TooFewObservations, "Jarque-Bera needs at least 8 observations");
    require_variance(x);
    const MomentSummary mo = moments(x);
    const double excess = mo.kurtosis - 3.0;
    const double jb = static_cast<double>(mo.n) / 6.0 * (mo.skewness * mo.skewness + excess * excess / 4.0);

    TestOutcome out;
    out.test = TestKind::JarqueBera;
    out.statistic = jb;
    out.p_value = detail::chi_squared_sf(jb, 2.0);
    out.alpha = alpha;
    out.decision = decide(*out.p_value, alpha);
    out.payload.df1 = 2.0;
    return out;
}

TestOutcome shapiro_wilk(std::span<const double> x, double alpha) {
    if (x.size() < 3) throw Error(ErrorCode::TooFewObservations, "Shapiro-Wilk needs at least 3 observations");
    if (x.size() > 5000)
        throw Error(ErrorCode::TooManyObservations, "Shapiro-Wilk approximation is valid up to n = 5000");
    require_variance(x);

    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const auto a = shapiro_wilk_coefficients(n);

    const double m = mean(sorted);
    double ss = 0.0;
    for (double v : sorted) ss += (v - m) * (v - m);
    double num = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) num += a[i] * (sorted[n - 1 - i] - sorted[i]);
    double w = std::min(1.0, num * num / ss);
    if (n == 3) w = std::max(w, 0.75);

    TestOutcome out;
    out.test = TestKind::ShapiroWilk;
    out.statistic = w;
    out.p_value = shapiro_wilk_pvalue(w, n);
    out.alpha = alpha;
    out.decision = decide(*out.p_value, alpha);
    return out;
}

double negentropy(std::span<const double> x) {
    require_variance(x);
    const MomentSummary mo = moments(x);
    const double sqrt3 = std::sqrt(3.0);
    const double k1 = 36.0 / (8.0 * sqrt3 - 9.0);
    const double k2 = 24.0 / (16.0 * sqrt3 - 27.0);
    double odd = 0.0, even = 0.0;
    for (double v : x) {
        const double u = (v - mo.mean) / mo.sd;
        const double g = std::exp(-0.5 * u * u);
        odd += u * g;
        even += g;
    }
    const double n = static_cast<double>(x.size());
    odd /= n;
    even /= n;
    const double d = even - std::sqrt(0.5);
    return k1 * odd * odd + k2 * d * d;
}

NongaussianityReport nongaussianity_report(const Dataset& data, double alpha) {
    NongaussianityReport report;
    for (const auto& col : data.columns()) {
        if (col.role == Role::Unused) continue;
        ColumnNormality entry;
        entry.variable = col.name;
        entry.role = col.role;
        entry.jarque_bera = jarque_bera(col.values, alpha);
        entry.jarque_bera.payload.variable = col.name;
        if (col.values.size() <= 5000) {
            entry.shapiro_wilk = shapiro_wilk(col.values, alpha);
            entry.shapiro_wilk->payload.variable = col.name;
        } else {
            report.notes.push_back("shapiro_wilk_skipped:" + col.name);
        }
        entry.negentropy = negentropy(col.values);

        std::set<double> distinct;
        for (double v : col.values) {
            distinct.insert(v);
            if (distinct.size() > 2) break;
        }
        if (distinct.size() <= 2) {
            entry.jarque_bera.payload.notes.push_back("two-point variable: normality tests are formally valid but degenerate");
        }
        report.satisfied = report.satisfied || entry.jarque_bera.rejected();
        report.columns.push_back(std::move(entry));
    }
    if (!report.satisfied) report.notes.push_back("NONGAUSSIANITY_NOT_ESTABLISHED");
    return report;
}

}  // namespace ivlingam
