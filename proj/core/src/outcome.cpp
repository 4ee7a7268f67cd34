#include "ivlingam/outcome.hpp"

#include <array>

namespace ivlingam {

namespace {
constexpr std::array kKinds{
    TestKind::BootstrapPercentile, TestKind::AsymptoticNormal, TestKind::Permutation,
    TestKind::LikelihoodRatio,     TestKind::HSIC,             TestKind::JarqueBera,
    TestKind::ShapiroWilk,         TestKind::FirstStageF,
};
}  // namespace

std::string_view to_string(TestKind kind) noexcept {
    switch (kind) {
        case TestKind::BootstrapPercentile: return "BootstrapPercentile";
        case TestKind::AsymptoticNormal: return "AsymptoticNormal";
        case TestKind::Permutation: return "Permutation";
        case TestKind::LikelihoodRatio: return "LikelihoodRatio";
        case TestKind::HSIC: return "HSIC";
        case TestKind::JarqueBera: return "JarqueBera";
        case TestKind::ShapiroWilk: return "ShapiroWilk";
        case TestKind::FirstStageF: return "FirstStageF";
    }
    return "Unknown";
}

std::optional<TestKind> parse_test_kind(std::string_view text) noexcept {
    for (TestKind k : kKinds) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Decision d) noexcept { return d == Decision::Reject ? "Reject" : "NonReject"; }

std::string_view short_label(Decision d) noexcept { return d == Decision::Reject ? "R" : "NR"; }

Decision decide(double p_value, double alpha) noexcept {
    return p_value < alpha ? Decision::Reject : Decision::NonReject;
}

}  // namespace ivlingam
