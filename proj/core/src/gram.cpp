#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gram_kernels.hpp"

namespace ivlingam::detail {

void gaussian_gram(const double* x, std::size_t n, double scale, double* out, double* row_sums) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        double* row = out + i * n;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = xi - x[j];
            const double v = std::exp(-d * d * scale);
            row[j] = v;
            s += v;
        }
        row_sums[i] = s;
    }
}

double hsic_streaming(const double* k, const double* k_row_sums, double k_total, const double* y, std::size_t n,
                      double scale) {
    std::vector<double> l_rows(n, 1.0);  // diagonal entries of L
    double upper = 0.0;                  // sum_{i<j} K_ij L_ij
    for (std::size_t i = 0; i < n; ++i) {
        const double yi = y[i];
        const double* kr = k + i * n;
        double acc = 0.0;
        double rs = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = yi - y[j];
            const double l = std::exp(-d * d * scale);
            acc += kr[j] * l;
            rs += l;
            l_rows[j] += l;
        }
        upper += acc;
        l_rows[i] += rs;
    }
    const double nd = static_cast<double>(n);
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag += k[i * n + i];
    double l_total = 0.0;
    double rows = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        l_total += l_rows[i];
        rows += k_row_sums[i] * l_rows[i];
    }
    const double cross = 2.0 * upper + diag;
    return (cross - 2.0 * rows / nd + k_total * l_total / (nd * nd)) / (nd * nd);
}

void gaussian_gram_packed(const double* x, std::size_t n, double scale, double* packed, double* row_sums) {
    for (std::size_t i = 0; i < n; ++i) row_sums[i] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        double s = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = xi - x[j];
            const double v = std::exp(-d * d * scale);
            packed[j - i - 1] = v;
            s += v;
            row_sums[j] += v;
        }
        row_sums[i] += s;
        packed += n - i - 1;
    }
}

double hsic_streaming_packed(const double* packed, const double* k_row_sums, double k_total, const double* y,
                             std::size_t n, double scale) {
    std::vector<double> l_rows(n, 1.0);
    double upper = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double yi = y[i];
        double acc = 0.0;
        double rs = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = yi - y[j];
            const double l = std::exp(-d * d * scale);
            acc += packed[j - i - 1] * l;
            rs += l;
            l_rows[j] += l;
        }
        upper += acc;
        l_rows[i] += rs;
        packed += n - i - 1;
    }
    const double nd = static_cast<double>(n);
    double l_total = 0.0;
    double rows = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        l_total += l_rows[i];
        rows += k_row_sums[i] * l_rows[i];
    }
    const double cross = 2.0 * upper + nd;
    return (cross - 2.0 * rows / nd + k_total * l_total / (nd * nd)) / (nd * nd);
}

double frobenius_dot(const double* a, const double* b, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* ra = a + i * n;
        const double* rb = b + i * n;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ra[j] * rb[j];
        total += s;
    }
    return total;
}

double permuted_dot(const double* a, const double* b, const std::size_t* perm, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* ra = a + i * n;
        const double* rb = b + perm[i] * n;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ra[j] * rb[perm[j]];
        total += s;
    }
    return total;
}

double loo_kde_loglik(const double* x, std::size_t n, double h) {
    // no infinities here: this file is built with -ffast-math
    const double scale = 0.5 / (h * h);
    const double log_norm = std::log(static_cast<double>(n - 1) * h * std::sqrt(2.0 * std::numbers::pi));
    std::vector<double> expo(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = x[i] - x[j];
            expo[j] = -d * d * scale;
        }
        double max_e = expo[i == 0 ? 1 : 0];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) max_e = std::max(max_e, expo[j]);
        }
        double s = 0.0;
        for (std::size_t j = 0; j < i; ++j) s += std::exp(expo[j] - max_e);
        for (std::size_t j = i + 1; j < n; ++j) s += std::exp(expo[j] - max_e);
        total += max_e + std::log(s) - log_norm;
    }
    return total;
}

}  // namespace ivlingam::detail
