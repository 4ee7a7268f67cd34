#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gram_kernels.hpp"
#include "ivlingam/error.hpp"
#include "ivlingam/hsic.hpp"

namespace ivlingam {

namespace {

// Number of pairs i < j with sorted[j] - sorted[i] <= v.
std::uint64_t count_within(const std::vector<double>& sorted, double v) {
    std::uint64_t count = 0;
    std::size_t lo = 0;
    for (std::size_t j = 1; j < sorted.size(); ++j) {
        while (sorted[j] - sorted[lo] > v) ++lo;
        count += j - lo;
    }
    return count;
}

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t count_lo = 0;  // differences <= lo
    std::uint64_t count_hi = 0;  // differences <= hi
    std::optional<double> split;  // a value with exactly `first` differences at or below it
};

// Tighten (lo, hi] around ranks first..last until it holds about n
// differences. Guesses interpolate the count curve towards either edge of
// the wanted band; interleaved bisection keeps progress bounded.
void tighten(const std::vector<double>& sorted, std::uint64_t first, std::uint64_t last, Bracket& b) {
    const auto n = static_cast<std::uint64_t>(sorted.size());
    const std::uint64_t margin = n / 4;
    const std::uint64_t want_lo = first > margin ? first - margin : 0;
    const std::uint64_t want_hi = last + margin;
    auto probe = [&](double v) {
        if (!(v > b.lo && v < b.hi)) return false;
        const std::uint64_t c = count_within(sorted, v);
        if (c >= last) {
            b.hi = v;
            b.count_hi = c;
        } else if (c < first) {
            b.lo = v;
            b.count_lo = c;
        } else {
            b.split = v;
        }
        return true;
    };
    while (!b.split && b.count_hi - b.count_lo > n) {
        const double width = b.hi - b.lo;
        const double span = static_cast<double>(b.count_hi - b.count_lo);
        if (want_lo > b.count_lo) probe(b.lo + width * static_cast<double>(want_lo - b.count_lo) / span);
        if (!b.split && want_hi < b.count_hi) probe(b.lo + width * static_cast<double>(want_hi - b.count_lo) / span);
        if (!b.split && b.hi - b.lo > 0.5 * width && !probe(b.lo + 0.5 * (b.hi - b.lo))) return;
    }
}

// Largest difference <= v and smallest difference > v.
std::pair<double, double> straddle(const std::vector<double>& sorted, double v) {
    double below = 0.0;
    double above = sorted.back() - sorted.front();
    std::size_t i = 0;  // first i with sorted[j] - sorted[i] <= v
    for (std::size_t j = 1; j < sorted.size(); ++j) {
        while (sorted[j] - sorted[i] > v) ++i;
        below = std::max(below, sorted[j] - sorted[i]);
        if (i > 0) above = std::min(above, sorted[j] - sorted[i - 1]);
    }
    return {below, above};
}

// Values of the first-th and last-th smallest (1-based) pairwise differences,
// last <= first + 1.
std::pair<double, double> ranked_differences(const std::vector<double>& sorted, std::uint64_t first,
                                             std::uint64_t last) {
    const std::size_t n = sorted.size();
    Bracket b;
    b.hi = sorted.back() - sorted.front();
    b.count_lo = count_within(sorted, 0.0);
    b.count_hi = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    tighten(sorted, first, last, b);
    if (b.split) return straddle(sorted, *b.split);
    // lo and hi are adjacent doubles: every difference in the bracket equals hi
    if (b.count_hi - b.count_lo > n) return {b.hi, b.hi};

    std::vector<double> band;
    band.reserve(static_cast<std::size_t>(b.count_hi - b.count_lo));
    std::size_t lo_i = 0;  // first i with sorted[j] - sorted[i] <= hi
    std::size_t hi_i = 0;  // first i with sorted[j] - sorted[i] <= lo
    for (std::size_t j = 1; j < n; ++j) {
        while (sorted[j] - sorted[lo_i] > b.hi) ++lo_i;
        while (hi_i < j && sorted[j] - sorted[hi_i] > b.lo) ++hi_i;
        for (std::size_t i = lo_i; i < hi_i; ++i) band.push_back(sorted[j] - sorted[i]);
    }
    const auto a = static_cast<std::ptrdiff_t>(first - b.count_lo - 1);
    std::nth_element(band.begin(), band.begin() + a, band.end());
    const double at_first = band[static_cast<std::size_t>(a)];
    if (last == first) return {at_first, at_first};
    return {at_first, *std::min_element(band.begin() + a + 1, band.end())};
}

}  // namespace

KernelSpec KernelSpec::fixed(double bandwidth) {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw Error(ErrorCode::InvalidArgument, "kernel bandwidth must be positive");
    return KernelSpec{bandwidth};
}

double KernelSpec::resolve(std::span<const double> x) const { return bandwidth ? *bandwidth : ::ivlingam::median_heuristic(x); }

double median_heuristic(std::span<const double> x) {
    if (x.size() < 2) throw Error(ErrorCode::DegenerateInput, "median heuristic needs at least two points");
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.back() > sorted.front()))
        throw Error(ErrorCode::DegenerateInput, "all values are identical");

    const std::uint64_t zeros = count_within(sorted, 0.0);
    const std::uint64_t n = sorted.size();
    const std::uint64_t positive = n * (n - 1) / 2 - zeros;
    // ranks among all differences, zeros first
    const std::uint64_t first = zeros + (positive + 1) / 2;
    const std::uint64_t last = zeros + positive / 2 + 1;
    const auto [a, b] = ranked_differences(sorted, first, last);
    return 0.5 * (a + b);
}

GramMatrix GramMatrix::gaussian(std::span<const double> x, double bandwidth) {
    if (x.size() > kMaxGramSize)
        throw Error(ErrorCode::NotSupported,
                    "Gram matrices are limited to n <= " + std::to_string(kMaxGramSize));
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw Error(ErrorCode::DegenerateInput, "kernel bandwidth must be positive");
    GramMatrix g;
    g.n_ = x.size();
    g.bandwidth_ = bandwidth;
    g.values_.resize(g.n_ * g.n_);
    g.row_sums_.assign(g.n_, 0.0);
    detail::gaussian_gram(x.data(), g.n_, 0.5 / (bandwidth * bandwidth), g.values_.data(), g.row_sums_.data());
    for (double s : g.row_sums_) g.total_ += s;
    return g;
}

}  // namespace ivlingam
