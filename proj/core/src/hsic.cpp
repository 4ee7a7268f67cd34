#include <algorithm>
#include <cmath>
#include <numeric>

#include "gram_kernels.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/hsic.hpp"
#include "ivlingam/parallel.hpp"

namespace ivlingam {

namespace {

void require_pair(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "HSIC inputs differ in length");
    if (x.size() < min_n)
        throw Error(ErrorCode::TooFewObservations, "HSIC needs at least " + std::to_string(min_n) + " observations");
}

// tr(K H L' H) / n^2 where L' is L re-indexed by perm, expanded as
// sum K.L' - (2/n) sum_i kr_i lr'_i + (sum K)(sum L) / n^2.
double centred_statistic(const GramMatrix& k, const GramMatrix& l, double cross, std::span<const std::size_t> perm) {
    const std::size_t n = k.size();
    const double nd = static_cast<double>(n);
    const auto kr = k.row_sums();
    const auto lr = l.row_sums();
    double rows = 0.0;
    if (perm.empty()) {
        for (std::size_t i = 0; i < n; ++i) rows += kr[i] * lr[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) rows += kr[i] * lr[perm[i]];
    }
    return (cross - 2.0 * rows / nd + k.total() * l.total() / (nd * nd)) / (nd * nd);
}

bool at_least(double candidate, double observed) {
    return candidate >= observed - kPermutationTieTolerance * std::max(1e-300, std::abs(observed));
}

}  // namespace

double hsic_statistic(const GramMatrix& k, const GramMatrix& l) {
    if (k.size() != l.size()) throw Error(ErrorCode::LengthMismatch, "Gram matrices differ in size");
    return centred_statistic(k, l, detail::frobenius_dot(k.data(), l.data(), k.size()), {});
}

double hsic_statistic(const GramMatrix& k, std::span<const double> y, double bandwidth_y) {
    if (k.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "Gram matrix and sample differ in size");
    if (!(bandwidth_y > 0.0)) throw Error(ErrorCode::DegenerateInput, "kernel bandwidth must be positive");
    return detail::hsic_streaming(k.data(), k.row_sums().data(), k.total(), y.data(), y.size(),
                                  0.5 / (bandwidth_y * bandwidth_y));
}

double hsic_statistic_permuted(const GramMatrix& k, const GramMatrix& l, std::span<const std::size_t> perm) {
    if (k.size() != l.size() || perm.size() != k.size())
        throw Error(ErrorCode::LengthMismatch, "Gram matrices / permutation differ in size");
    return centred_statistic(k, l, detail::permuted_dot(k.data(), l.data(), perm.data(), k.size()), perm);
}

double hsic_statistic(std::span<const double> x, std::span<const double> y, const KernelSpec& kx,
                      const KernelSpec& ky) {
    require_pair(x, y, 4);
    const auto k = GramMatrix::gaussian(x, kx.resolve(x));
    const auto l = GramMatrix::gaussian(y, ky.resolve(y));
    return hsic_statistic(k, l);
}

HsicResult hsic_test(std::span<const double> x, std::span<const double> y, std::size_t permutations,
                     const RandomSource& rng, const KernelSpec& kx, const KernelSpec& ky) {
    require_pair(x, y, 8);
    if (permutations < 99) throw Error(ErrorCode::InvalidArgument, "HSIC permutation test needs R >= 99");
    const auto k = GramMatrix::gaussian(x, kx.resolve(x));
    const auto l = GramMatrix::gaussian(y, ky.resolve(y));

    std::vector<std::size_t> identity(x.size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    const double observed = hsic_statistic_permuted(k, l, identity);

    std::vector<char> exceed(permutations, 0);
    parallel_for(permutations, [&](std::size_t r) {
        Engine engine = rng.stream("hsic", r);
        const auto perm = random_permutation(x.size(), engine);
        exceed[r] = at_least(hsic_statistic_permuted(k, l, perm), observed) ? 1 : 0;
    });
    const auto count = static_cast<double>(std::count(exceed.begin(), exceed.end(), char{1}));

    HsicResult out;
    out.statistic = hsic_statistic(k, l);
    out.permutation_p = (1.0 + count) / (static_cast<double>(permutations) + 1.0);
    out.permutations_used = permutations;
    out.bandwidth_x = k.bandwidth();
    out.bandwidth_y = l.bandwidth();
    return out;
}

HsicResult hsic_test_exhaustive(std::span<const double> x, std::span<const double> y, const KernelSpec& kx,
                                const KernelSpec& ky) {
    require_pair(x, y, 4);
    if (x.size() > kMaxExhaustiveSize)
        throw Error(ErrorCode::NotSupported, "exhaustive enumeration is limited to n <= 9");
    const auto k = GramMatrix::gaussian(x, kx.resolve(x));
    const auto l = GramMatrix::gaussian(y, ky.resolve(y));

    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    const double observed = hsic_statistic_permuted(k, l, perm);
    std::size_t total = 0;
    std::size_t count = 0;
    do {
        ++total;
        if (at_least(hsic_statistic_permuted(k, l, perm), observed)) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));

    HsicResult out;
    out.statistic = hsic_statistic(k, l);
    out.permutation_p = static_cast<double>(count) / static_cast<double>(total);
    out.permutations_used = total;
    out.bandwidth_x = k.bandwidth();
    out.bandwidth_y = l.bandwidth();
    return out;
}

}  // namespace ivlingam
