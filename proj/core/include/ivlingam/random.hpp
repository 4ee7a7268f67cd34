#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ivlingam {

using Engine = std::mt19937_64;

/// Deterministic source of independent random substreams.
///
/// A substream is addressed by a purpose tag and an index; its seed is a hash of
/// (master seed, tag, index). Nothing is consumed from a shared state, so a
/// replicate sees the same numbers whatever thread or order it runs in.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t master_seed) noexcept : seed_(master_seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    /// Child source for a nested computation (e.g. one Monte Carlo replicate).
    [[nodiscard]] RandomSource derive(std::string_view tag, std::uint64_t index) const noexcept;

    [[nodiscard]] Engine stream(std::string_view tag, std::uint64_t index = 0) const;

    friend bool operator==(const RandomSource&, const RandomSource&) = default;

private:
    std::uint64_t seed_;
};

/// SplitMix64 finaliser.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Uniformly random permutation of 0..n-1 (Fisher-Yates).
[[nodiscard]] std::vector<std::size_t> random_permutation(std::size_t n, Engine& engine);

/// n row indices drawn with replacement from 0..n-1.
[[nodiscard]] std::vector<std::size_t> bootstrap_indices(std::size_t n, Engine& engine);

}  // namespace ivlingam
