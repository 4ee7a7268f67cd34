#pragma once

#include <cstddef>

// Hot loops, compiled with vectorised math (see core/CMakeLists.txt).
namespace ivlingam::detail {

/// out[i*n + j] = exp(-(x_i - x_j)^2 * scale), full symmetric matrix, and its
/// row sums.
void gaussian_gram(const double* x, std::size_t n, double scale, double* out, double* row_sums);

/// HSIC between a materialised Gram matrix K (diagonal 1) and the Gaussian
/// kernel of y, whose entries are generated on the fly and never stored.
double hsic_streaming(const double* k, const double* k_row_sums, double k_total, const double* y, std::size_t n,
                      double scale);

/// Strict upper triangle of the same matrix, packed row by row (row i holds
/// j = i+1..n-1), plus full row sums. packed needs n(n-1)/2 slots.
void gaussian_gram_packed(const double* x, std::size_t n, double scale, double* packed, double* row_sums);

/// hsic_streaming against a packed K.
double hsic_streaming_packed(const double* packed, const double* k_row_sums, double k_total, const double* y,
                             std::size_t n, double scale);

/// sum_ij a[i*n+j] * b[i*n+j]
double frobenius_dot(const double* a, const double* b, std::size_t n);

/// sum_ij a[i*n+j] * b[perm[i]*n + perm[j]]
double permuted_dot(const double* a, const double* b, const std::size_t* perm, std::size_t n);

/// Leave-one-out Gaussian KDE log-likelihood, sum_i log f_{-i}(x_i), with
/// bandwidth h. Uses a max-shifted log-sum-exp so isolated points stay finite.
double loo_kde_loglik(const double* x, std::size_t n, double h);

}  // namespace ivlingam::detail
