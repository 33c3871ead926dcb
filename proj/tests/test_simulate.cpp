#include <gtest/gtest.h>

#include <cmath>

#include "levy/error.hpp"
#include "levy/simulate.hpp"
#include "support.hpp"

namespace levy {
namespace {

using testing::family_cases;
using testing::sample_mean;
using testing::sample_variance;
using testing::within_se;

Prior point_prior(double x)
{
    return prior_from_atoms(std::vector<Atom>{{x, 1.0}});
}

std::vector<double> terminal_values(const NoiseModel& model, const Prior& prior, double t, int n,
                                    std::uint64_t seed)
{
    const TimeGrid grid({0.0, t});
    std::vector<double> out;
    for (int p = 0; p < n; ++p) {
        out.push_back(simulate_information_path(model, prior, grid, RandomStream(seed, p)).values[1]);
    }
    return out;
}

bool monotone(Family f)
{
    return f == Family::Poisson || f == Family::Gamma || f == Family::NegativeBinomial ||
           f == Family::InverseGaussian;
}

TEST(TimeGrid, Validation)
{
    EXPECT_NO_THROW(TimeGrid({0.0}));
    EXPECT_THROW(TimeGrid({}), Error);
    EXPECT_THROW(TimeGrid({0.1, 0.2}), Error);
    EXPECT_THROW(TimeGrid({0.0, 0.2, 0.2}), Error);
    EXPECT_THROW(TimeGrid({0.0, INFINITY}), Error);
    const TimeGrid u = TimeGrid::uniform(2.0, 200);
    EXPECT_EQ(u.size(), 201u);
    EXPECT_EQ(u.back(), 2.0);
    EXPECT_DOUBLE_EQ(u[100], 1.0);
}

TEST(SampleMessage, Examples)
{
    RandomStream s(3);
    const Prior point = point_prior(2.0);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(sample_message(point, s), 2.0);

    const Prior coin = prior_from_atoms(std::vector<Atom>{{0, 0.5}, {1, 0.5}});
    std::vector<double> ones;
    for (int i = 0; i < 100000; ++i) ones.push_back(sample_message(coin, s));
    EXPECT_TRUE(within_se(sample_mean(ones), 0.5));

    const Prior skew = prior_from_atoms(std::vector<Atom>{{0, 1e-9}, {1, 1 - 1e-9}});
    for (int i = 0; i < 1000; ++i) {
        const double x = sample_message(skew, s);
        EXPECT_TRUE(x == 0.0 || x == 1.0);
    }
}

TEST(Simulate, SinglePointGridGivesZero)
{
    for (const auto& c : family_cases()) {
        const auto prior = prior_from_atoms(c.atoms);
        const auto path = simulate_information_path(c.model, prior, TimeGrid({0.0}), RandomStream(1));
        ASSERT_EQ(path.values.size(), 1u);
        EXPECT_EQ(path.values[0], 0.0);
    }
}

TEST(Simulate, BrownianConditionalMean)
{
    const auto xs = terminal_values(NoiseModel(params::Brownian{}), point_prior(0.5), 4.0, 20000, 5);
    EXPECT_TRUE(within_se(sample_mean(xs), 2.0));
}

TEST(Simulate, PoissonConditionalVariance)
{
    const auto xs = terminal_values(NoiseModel(params::Poisson{1.0}), point_prior(0.0), 3.0, 20000, 6);
    EXPECT_TRUE(within_se(sample_variance(xs), 3.0));
}

TEST(Simulate, IncompatiblePriorIsRejected)
{
    const auto prior = point_prior(1.5);
    try {
        simulate_information_path(NoiseModel(params::Gamma{1.0, 1.0}), prior, TimeGrid({0.0, 1.0}),
                                  RandomStream(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompatibleSupport);
    }
}

TEST(Simulate, Deterministic)
{
    for (const auto& c : family_cases()) {
        const auto prior = prior_from_atoms(c.atoms);
        const TimeGrid grid = TimeGrid::uniform(1.0, 20);
        const auto a = simulate_information_path(c.model, prior, grid, RandomStream(77, 4));
        const auto b = simulate_information_path(c.model, prior, grid, RandomStream(77, 4));
        EXPECT_EQ(a.values, b.values) << c.name;
        EXPECT_EQ(a.message, b.message) << c.name;
        const auto other = simulate_information_path(c.model, prior, grid, RandomStream(77, 5));
        EXPECT_NE(a.values, other.values) << c.name;
    }
}

TEST(Simulate, PathShapeInvariants)
{
    for (const auto& c : family_cases()) {
        const auto prior = prior_from_atoms(c.atoms);
        const TimeGrid grid = TimeGrid::uniform(2.0, 50);
        for (int p = 0; p < 50; ++p) {
            const auto path = simulate_information_path(c.model, prior, grid, RandomStream(8, p));
            ASSERT_EQ(path.values.size(), grid.size());
            EXPECT_EQ(path.values[0], 0.0);
            bool member = false;
            for (const auto& a : c.atoms) member = member || a.x == path.message;
            EXPECT_TRUE(member);
            for (std::size_t i = 1; i < grid.size(); ++i) {
                if (monotone(c.model.family())) EXPECT_GE(path.values[i], path.values[i - 1]) << c.name;
                if (c.model.family() == Family::Poisson || c.model.family() == Family::NegativeBinomial) {
                    EXPECT_EQ(path.values[i], std::floor(path.values[i])) << c.name;
                }
            }
        }
    }
}

// For each family at a fixed message: the mean and variance laws and the
// conditional independence of increments over [0, 1] and [1, 2].
TEST(Simulate, ConditionalMomentLaws)
{
    const TimeGrid grid({0.0, 1.0, 2.0});
    const int n = 20000;
    for (const auto& c : family_cases()) {
        for (const auto& atom : c.atoms) {
            const double x = atom.x;
            std::vector<double> first, second, total;
            for (int p = 0; p < n; ++p) {
                const auto path = simulate_conditional_path(c.model, x, grid, RandomStream(21, p));
                first.push_back(path.values[1]);
                second.push_back(path.values[2] - path.values[1]);
                total.push_back(path.values[2]);
            }
            const auto d = exponent_derivatives(c.model, x);
            EXPECT_TRUE(within_se(sample_mean(total), 2.0 * d.first)) << c.name << " x=" << x;
            EXPECT_TRUE(within_se(sample_variance(total), 2.0 * d.second)) << c.name << " x=" << x;

            const auto m1 = sample_mean(first);
            const auto m2 = sample_mean(second);
            double cov = 0.0, v1 = 0.0, v2 = 0.0;
            for (int p = 0; p < n; ++p) {
                cov += (first[p] - m1.value) * (second[p] - m2.value);
                v1 += (first[p] - m1.value) * (first[p] - m1.value);
                v2 += (second[p] - m2.value) * (second[p] - m2.value);
            }
            const double r = cov / std::sqrt(v1 * v2);
            EXPECT_LE(std::abs(r) * std::sqrt(double(n)), 3.0) << c.name << " x=" << x;
        }
    }
}

TEST(Simulate, ConditionalPathRejectsInadmissibleMessage)
{
    EXPECT_THROW(simulate_conditional_path(NoiseModel(params::Gamma{1.0, 1.0}), 1.0, TimeGrid({0.0, 1.0}),
                                           RandomStream(0)),
                 Error);
}

TEST(Representations, WrongFamilyIsUnsupported)
{
    try {
        simulate_alternative_representation(NoiseModel(params::Gamma{1.0, 1.0}),
                                            Representation::VGGammaDifference, 0.0, TimeGrid({0.0, 1.0}),
                                            RandomStream(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedRepresentation);
    }
    EXPECT_THROW(simulate_alternative_representation(NoiseModel(params::VarianceGamma{2.0}),
                                                     Representation::NBCompound, 0.0, TimeGrid({0.0, 1.0}),
                                                     RandomStream(0)),
                 Error);
}

TEST(Representations, CompoundOnTrivialGrid)
{
    const auto path = simulate_alternative_representation(NoiseModel(params::NegativeBinomial{1.0, 0.5}),
                                                          Representation::NBCompound, 0.0, TimeGrid({0.0}),
                                                          RandomStream(0));
    EXPECT_EQ(path.values, std::vector<double>{0.0});
}

TEST(Representations, ScaledSubordinatorAtZeroMatchesSubordinated)
{
    // With x = 0 the clock scaling is exactly one and both constructions
    // consume the same draws, so the paths coincide.
    const NoiseModel vg(params::VarianceGamma{2.0});
    const TimeGrid grid = TimeGrid::uniform(1.0, 10);
    for (int p = 0; p < 20; ++p) {
        const auto a = simulate_alternative_representation(vg, Representation::VGSubordinated, 0.0, grid,
                                                           RandomStream(4, p));
        const auto b = simulate_alternative_representation(vg, Representation::VGScaledSubordinator, 0.0,
                                                           grid, RandomStream(4, p));
        EXPECT_EQ(a.values, b.values);
    }
}

TEST(Representations, GammaDifferenceAtZero)
{
    // (g1 - g2) / sqrt(2m) with g1, g2 ~ Gamma(m t): mean 0, variance t.
    const NoiseModel vg(params::VarianceGamma{2.0});
    std::vector<double> xs;
    for (int p = 0; p < 20000; ++p) {
        xs.push_back(simulate_alternative_representation(vg, Representation::VGGammaDifference, 0.0,
                                                         TimeGrid({0.0, 1.5}), RandomStream(31, p))
                         .values[1]);
    }
    EXPECT_TRUE(within_se(sample_mean(xs), 0.0));
    EXPECT_TRUE(within_se(sample_variance(xs), 1.5));
}

TEST(Representations, NegativeBinomialMeans)
{
    const NoiseModel nb(params::NegativeBinomial{1.0, 0.5});
    for (Representation rep : kNBRepresentations) {
        std::vector<double> xs;
        for (int p = 0; p < 20000; ++p) {
            xs.push_back(
                simulate_alternative_representation(nb, rep, 0.0, TimeGrid({0.0, 1.0}), RandomStream(32, p))
                    .values[1]);
        }
        EXPECT_TRUE(within_se(sample_mean(xs), 1.0)) << to_string(rep);
    }
}

TEST(Bridge, StartsAtZeroAndRejectsHorizon)
{
    const NoiseModel b(params::Brownian{});
    const auto prior = point_prior(1.0);
    const auto path = simulate_bridge_path(b, prior, 1.0, TimeGrid({0.0, 0.5}), RandomStream(0));
    EXPECT_EQ(path.values[0], 0.0);
    EXPECT_EQ(path.grid, TimeGrid({0.0, 0.5}));
    try {
        simulate_bridge_path(b, prior, 1.0, TimeGrid({0.0, 1.0}), RandomStream(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GridExceedsHorizon);
    }
    // 0.999999999 maps beyond 1e6 T.
    EXPECT_THROW(simulate_bridge_path(b, prior, 1.0, TimeGrid({0.0, 0.999999999}), RandomStream(0)), Error);
    EXPECT_NO_THROW(simulate_bridge_path(b, prior, 1.0, TimeGrid({0.0, 0.999}), RandomStream(0)));
}

TEST(Bridge, BrownianMean)
{
    const NoiseModel b(params::Brownian{});
    const auto prior = point_prior(1.0);
    std::vector<double> xs;
    for (int p = 0; p < 20000; ++p) {
        xs.push_back(simulate_bridge_path(b, prior, 1.0, TimeGrid({0.0, 0.5}), RandomStream(41, p)).values[1]);
    }
    EXPECT_TRUE(within_se(sample_mean(xs), 0.5));
}

TEST(Bridge, GammaCovariance)
{
    const NoiseModel g(params::Gamma{1.0, 1.0});
    const auto prior = point_prior(0.0);
    const TimeGrid grid({0.0, 0.5, 1.0});
    std::vector<double> a, b;
    for (int p = 0; p < 20000; ++p) {
        const auto path = simulate_bridge_path(g, prior, 2.0, grid, RandomStream(42, p));
        a.push_back(path.values[1]);
        b.push_back(path.values[2]);
    }
    const double ma = sample_mean(a).value;
    const double mb = sample_mean(b).value;
    std::vector<double> prod;
    for (std::size_t i = 0; i < a.size(); ++i) prod.push_back((a[i] - ma) * (b[i] - mb));
    EXPECT_TRUE(within_se(sample_mean(prod), 0.25));
}

}  // namespace
}  // namespace levy
