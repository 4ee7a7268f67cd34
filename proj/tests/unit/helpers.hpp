#pragma once

#include <random>
#include <vector>

#include "ivlingam/dataset.hpp"
#include "ivlingam/random.hpp"

namespace testing {

inline ivlingam::Dataset iv_dataset(std::vector<double> z, std::vector<double> x, std::vector<double> y) {
    using ivlingam::Role;
    return ivlingam::Dataset({{"z", Role::Instrument, std::move(z)},
                              {"x", Role::Treatment, std::move(x)},
                              {"y", Role::Outcome, std::move(y)}});
}

inline std::vector<double> normal_draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    for (auto& x : v) x = dist(engine);
    return v;
}

inline std::vector<double> t_draws(std::size_t n, double df, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::student_t_distribution<double> dist(df);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(engine);
    return v;
}

}  // namespace testing
