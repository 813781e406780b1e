#include <gtest/gtest.h>

#include <cmath>

#include "olo/baselines.hpp"
#include "support.hpp"

using namespace olo;
using olo::testing::log_log_slope;
using olo::testing::uniform_vector;

namespace {

Vector vec(std::initializer_list<double> values)
{
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

double ftrl_objective(const Vector& w, const Vector& s, double sigma, const NormSpec& spec)
{
    const double n = norm(w, spec);
    return s.dot(w) + 0.5 * sigma * n * n;
}

/// Numeric minimizer over the unit ball in two dimensions: a grid search
/// that repeatedly zooms in around the incumbent.
double zoom_minimum(const Vector& s, double sigma, const NormSpec& spec)
{
    Vector center = Vector::Zero(2);
    double half = 1.0;
    double best = ftrl_objective(center, s, sigma, spec);
    for (int level = 0; level < 40; ++level) {
        const int n = 40;
        Vector incumbent = center;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const Vector w = center + vec({half * (2.0 * i / n - 1.0), half * (2.0 * j / n - 1.0)});
                if (norm(w, spec) > 1.0)
                    continue;
                const double value = ftrl_objective(w, s, sigma, spec);
                if (value < best) {
                    best = value;
                    incumbent = w;
                }
            }
        center = incumbent;
        half *= 0.5;
    }
    return best;
}

/// Regret of a unit-ball learner against the best unit vector in hindsight.
double ball_regret(Learner& learner, const std::vector<Vector>& stream)
{
    double loss = 0.0;
    Vector G = Vector::Zero(learner.dim());
    for (const auto& g : stream) {
        loss += g.dot(learner.predict());
        learner.update(g);
        G += g;
    }
    return loss + G.norm();
}

} // namespace

TEST(BallOgd, ZeroGradientsKeepOrigin)
{
    BallOgd learner(NormSpec::euclidean(3));
    for (int t = 0; t < 10; ++t)
        learner.update(Vector::Zero(3));
    EXPECT_EQ(learner.predict(), Vector::Zero(3));
}

TEST(BallOgd, FirstStep)
{
    BallOgd learner(NormSpec::euclidean(2));
    learner.update(vec({1.0, 0.0}));
    EXPECT_NEAR(learner.predict()[0], -std::sqrt(2.0) / 2.0, 1e-15);
    EXPECT_EQ(learner.predict()[1], 0.0);
}

TEST(BallOgd, EuclideanOnly)
{
    EXPECT_THROW(BallOgd(NormSpec::p_norm(1.5, 2)), UnsupportedError);
}

TEST(BallOgd, AdversarialRegretWithinThreeRootSum)
{
    RandomStream rng(31, 0);
    for (int run = 0; run < 5; ++run) {
        BallOgd learner(NormSpec::euclidean(4));
        std::vector<Vector> stream;
        double S = 0.0;
        for (int t = 0; t < 10000; ++t) {
            Vector g = uniform_vector(rng, 4, -1, 1);
            g[0] += 0.3;
            g /= g.norm();
            stream.push_back(g);
            S += 1.0;
        }
        EXPECT_LE(ball_regret(learner, stream), 3.0 * std::sqrt(S));
    }
}

TEST(BallFtrl, ZeroSumGivesOrigin)
{
    BallFtrl learner(NormSpec::p_norm(1.5, 2));
    EXPECT_EQ(learner.predict(), Vector::Zero(2));
    learner.update(Vector::Zero(2));
    EXPECT_EQ(learner.predict(), Vector::Zero(2));
    EXPECT_EQ(ftrl_ball_minimizer(Vector::Zero(2), 1.0, NormSpec::p_norm(1.5, 2)), Vector::Zero(2));
}

TEST(BallFtrl, SingleGradientFollowsClosedForm)
{
    // sum_g = (1, 0), sum of squared dual norms 1, lambda = 1/2: the
    // unconstrained minimizer is -(1, 0) * sqrt(lambda) / sqrt(1).
    BallFtrl learner(NormSpec::p_norm(1.5, 2));
    learner.update(vec({1.0, 0.0}));
    EXPECT_NEAR(learner.predict()[0], -std::sqrt(0.5), 1e-15);
    EXPECT_EQ(learner.predict()[1], 0.0);
}

TEST(BallFtrl, MinimizerMatchesNumericOracle)
{
    RandomStream rng(32, 0);
    for (double p : {2.0, 1.5, 1.25}) {
        const NormSpec spec = NormSpec::p_norm(p, 2);
        for (int trial = 0; trial < 10; ++trial) {
            const Vector s = uniform_vector(rng, 2, -3, 3);
            const double sigma = rng.uniform(0.3, 4.0);
            const Vector w = ftrl_ball_minimizer(s, sigma, spec);
            EXPECT_LE(norm(w, spec), 1.0 + 1e-12);
            EXPECT_LE(ftrl_objective(w, s, sigma, spec) - zoom_minimum(s, sigma, spec), 1e-8)
                << "p=" << p << " trial " << trial;
        }
    }
}

TEST(BallFtrl, RejectsUnsupportedSpaces)
{
    EXPECT_THROW(BallFtrl(NormSpec::p_norm(3.0, 2)), UnsupportedError);
    EXPECT_THROW(BallFtrl(NormSpec::l1(2)), UnsupportedError);
}

TEST(BallLearners, IteratesStayFeasible)
{
    RandomStream rng(33, 0);
    const std::vector<NormSpec> specs = {NormSpec::euclidean(5), NormSpec::p_norm(1.5, 5), NormSpec::p_norm(1.1, 5)};
    for (const auto& spec : specs) {
        std::unique_ptr<Learner> learner;
        if (spec.kind() == NormKind::euclidean)
            learner = std::make_unique<BallOgd>(spec);
        else
            learner = std::make_unique<BallFtrl>(spec);
        for (int t = 0; t < 2000; ++t) {
            learner->update(olo::testing::random_bounded_gradient(rng, spec));
            EXPECT_LE(norm(learner->predict(), spec), 1.0 + 1e-9);
        }
    }
}

TEST(BallLearners, SublinearRegretOnRademacherCoordinates)
{
    for (const auto& spec : {NormSpec::euclidean(5), NormSpec::p_norm(1.5, 5)}) {
        std::vector<double> horizons, regrets;
        for (Index T : {1000, 10000}) {
            double total = 0.0;
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                RandomStream rng(seed, 34);
                std::vector<Vector> stream;
                for (Index t = 0; t < T; ++t) {
                    Vector g(5);
                    for (Index i = 0; i < 5; ++i)
                        g[i] = rng.sign();
                    stream.push_back(g / dual_norm(g, spec));
                }
                std::unique_ptr<Learner> learner;
                if (spec.kind() == NormKind::euclidean)
                    learner = std::make_unique<BallOgd>(spec);
                else
                    learner = std::make_unique<BallFtrl>(spec);
                double loss = 0.0;
                Vector G = Vector::Zero(5);
                for (const auto& g : stream) {
                    loss += g.dot(learner->predict());
                    learner->update(g);
                    G += g;
                }
                total += loss + dual_norm(G, spec);
            }
            horizons.push_back(static_cast<double>(T));
            regrets.push_back(total / 10.0);
            EXPECT_LE(total / 10.0, 4.0 * std::sqrt(static_cast<double>(T))) << spec.describe();
        }
        EXPECT_LE(log_log_slope(horizons, regrets), 0.6) << spec.describe();
    }
}

TEST(ProjectedGradient, StepsAndProjects)
{
    ProjectedGradient learner(NormSpec::euclidean(2), 1.0, 1.0);
    learner.update(vec({0.6, 0.8}));
    EXPECT_TRUE(learner.predict().isApprox(vec({-0.6, -0.8}), 1e-15));
    learner.update(vec({0.6, 0.8}));
    EXPECT_NEAR(learner.predict().norm(), 1.0, 1e-15);
}

TEST(BallLearners, CheckpointRoundTrip)
{
    RandomStream rng(35, 0);
    const NormSpec spec = NormSpec::p_norm(1.5, 3);
    BallFtrl a(spec);
    for (int t = 0; t < 50; ++t)
        a.update(olo::testing::random_bounded_gradient(rng, spec));
    BallFtrl b(spec);
    b.load(nlohmann::json::parse(a.save().dump()));
    const Vector g = olo::testing::random_bounded_gradient(rng, spec);
    a.update(g);
    b.update(g);
    EXPECT_EQ(a.predict(), b.predict());
}
