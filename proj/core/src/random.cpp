#include "ivlingam/random.hpp"

#include <boost/random/uniform_int_distribution.hpp>
#include <numeric>

namespace ivlingam {

namespace {

std::uint64_t hash_tag(std::string_view tag) noexcept {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t combine(std::uint64_t seed, std::string_view tag, std::uint64_t index) noexcept {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ hash_tag(tag));
    h = mix64(h ^ (index + 0x9e3779b97f4a7c15ULL));
    return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomSource RandomSource::derive(std::string_view tag, std::uint64_t index) const noexcept {
    return RandomSource(combine(seed_, tag, index));
}

Engine RandomSource::stream(std::string_view tag, std::uint64_t index) const {
    return Engine(combine(seed_ ^ 0x5bd1e995ULL, tag, index));
}

std::vector<std::size_t> random_permutation(std::size_t n, Engine& engine) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    // std::shuffle is implementation-defined; spell it out so streams are portable.
    for (std::size_t i = n; i > 1; --i) {
        boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(perm[i - 1], perm[pick(engine)]);
    }
    return perm;
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, Engine& engine) {
    std::vector<std::size_t> idx(n);
    if (n == 0) return idx;
    boost::random::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (auto& i : idx) i = pick(engine);
    return idx;
}

}  // namespace ivlingam
