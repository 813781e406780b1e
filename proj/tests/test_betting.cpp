#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "olo/betting.hpp"
#include "olo/bounds.hpp"
#include "olo/settings.hpp"
#include "support.hpp"

using namespace olo;
using olo::testing::random_bounded_gradient;
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

/// Plain re-statement of the 1-D recursion, kept apart from the library.
struct HandRolled
{
    double wealth = 1.0, v = 0.0, A = 1.0;

    double bet() const { return v * wealth; }
    void step(double g)
    {
        const double w = bet();
        wealth -= g * w;
        const double z = g / (1.0 - g * v);
        A += z * z;
        v = std::clamp(v - 2.0 / (2.0 - std::log(3.0)) * z / A, -0.5, 0.5);
    }
};

/// Objective minimum of (y - x)^T A (y - x) over a polar grid of the ball
/// {||y|| <= r} in two dimensions (points with norm slightly above r are
/// pulled back radially).
double grid_projection_objective(const Vector& x, const Matrix& A, double r, const NormSpec& spec, int n)
{
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Vector y = vec({r * (2.0 * i / n - 1.0), r * (2.0 * j / n - 1.0)});
            const double length = norm(y, spec);
            if (length > r)
                continue;
            const Vector diff = y - x;
            best = std::min(best, diff.dot(A * diff));
        }
    return best;
}

double objective(const Vector& y, const Vector& x, const Matrix& A)
{
    const Vector diff = y - x;
    return diff.dot(A * diff);
}

} // namespace

TEST(CoinBetting1D, PredictExamples)
{
    BettingState1D s = make_betting_state_1d(1.0);
    EXPECT_EQ(predict_1d(s), 0.0);
    s.wealth = 2.0;
    s.v = 0.5;
    EXPECT_EQ(predict_1d(s), 1.0);
    s.wealth = 1.0;
    s.v = -0.5;
    EXPECT_EQ(predict_1d(s), -0.5);
}

TEST(CoinBetting1D, ZeroOutcomeIsNoOp)
{
    const BettingState1D s = update_1d(make_betting_state_1d(1.0), 0.0);
    EXPECT_EQ(s.wealth, 1.0);
    EXPECT_EQ(s.v, 0.0);
    EXPECT_EQ(s.A, 1.0);
}

TEST(CoinBetting1D, FirstStepClips)
{
    const BettingState1D s = update_1d(make_betting_state_1d(1.0), 0.5);
    EXPECT_EQ(s.wealth, 1.0);
    EXPECT_DOUBLE_EQ(s.A, 1.25);
    EXPECT_NEAR(kBettingStep, 2.2188, 1e-4);
    EXPECT_LT(-kBettingStep * 0.5 / 1.25, -0.5);
    EXPECT_EQ(s.v, -0.5);
}

TEST(CoinBetting1D, TwoRoundsMatchHandSimulation)
{
    BettingState1D s = make_betting_state_1d(1.0);
    HandRolled oracle;
    for (double g : {1.0, 1.0}) {
        EXPECT_EQ(predict_1d(s), oracle.bet());
        s = update_1d(s, g);
        oracle.step(g);
    }
    EXPECT_EQ(s.v, -0.5);
    EXPECT_DOUBLE_EQ(s.wealth, 1.5);
    EXPECT_DOUBLE_EQ(oracle.wealth, 1.5);
}

TEST(CoinBetting1D, RandomStreamsMatchHandSimulation)
{
    RandomStream rng(3, 0);
    for (int run = 0; run < 20; ++run) {
        BettingState1D s = make_betting_state_1d(1.0);
        HandRolled oracle;
        for (int t = 0; t < 1000; ++t) {
            const double g = rng.uniform(-1.0, 1.0);
            ASSERT_EQ(predict_1d(s), oracle.bet());
            s = update_1d(s, g);
            oracle.step(g);
        }
        EXPECT_EQ(s.wealth, oracle.wealth);
    }
}

TEST(CoinBetting1D, RejectsLargeOutcome)
{
    EXPECT_THROW(update_1d(make_betting_state_1d(1.0), 1.0 + 1e-9), PreconditionError);
    EXPECT_NO_THROW(update_1d(make_betting_state_1d(1.0), 1.0 + 1e-13));
    CoinBetting1D learner;
    EXPECT_THROW(learner.update(vec({-1.5})), PreconditionError);
}

TEST(CoinBetting1D, InvariantsAndWealthProduct)
{
    RandomStream rng(5, 0);
    for (int run = 0; run < 50; ++run) {
        BettingState1D s = make_betting_state_1d(1.0);
        double log_product = 0.0;
        double previous_A = s.A;
        for (int t = 0; t < 2000; ++t) {
            const double g = rng.uniform() < 0.3 ? rng.sign() : rng.uniform(-1.0, 1.0);
            const double factor = 1.0 - g * s.v;
            EXPECT_GE(factor, 0.5);
            EXPECT_LE(factor, 1.5);
            log_product += std::log(factor);
            s = update_1d(s, g);
            EXPECT_GT(s.wealth, 0.0);
            EXPECT_LE(std::abs(s.v), 0.5);
            EXPECT_GE(s.A, previous_A);
            previous_A = s.A;
        }
        EXPECT_NEAR(s.wealth / std::exp(log_product), 1.0, 1e-9);
    }
}

TEST(CoinBetting1D, WealthLowerBoundOnRademacherStreams)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto stream = olo::testing::rademacher_stream(seed, 1000);
        BettingState1D s = make_betting_state_1d(1.0);
        double G = 0.0, S = 0.0;
        for (double g : stream) {
            s = update_1d(s, g);
            G += g;
            S += g * g;
        }
        const double log_bound = 0.25 * G * G / (S + std::abs(G)) - (1.0 / 17.0 + 4.5 * std::log(1.0 + 4.0 * S));
        EXPECT_GE(std::log(s.wealth), log_bound) << "seed " << seed;
    }
}

TEST(CoinBetting1D, CheckpointResumesBitIdentical)
{
    RandomStream rng(8, 0);
    std::vector<double> stream;
    for (int t = 0; t < 400; ++t)
        stream.push_back(rng.uniform(-1.0, 1.0));
    CoinBetting1D straight(0.7);
    CoinBetting1D first(0.7);
    for (int t = 0; t < 200; ++t) {
        straight.update(vec({stream[t]}));
        first.update(vec({stream[t]}));
    }
    const std::string saved = first.save().dump();
    CoinBetting1D resumed(0.7);
    resumed.load(nlohmann::json::parse(saved));
    for (int t = 200; t < 400; ++t) {
        straight.update(vec({stream[t]}));
        resumed.update(vec({stream[t]}));
    }
    EXPECT_EQ(straight.state().wealth, resumed.state().wealth);
    EXPECT_EQ(straight.state().v, resumed.state().v);
    EXPECT_EQ(straight.state().A, resumed.state().A);
}

// ---------------------------------------------------------------------------

TEST(RankOneInverse, TracksInverse)
{
    RandomStream rng(9, 0);
    RankOneInverse inv(6, 1.0);
    for (int t = 0; t < 3000; ++t) {
        inv.add_outer(uniform_vector(rng, 6, -2, 2));
        if (t % 97 == 0) {
            const Matrix exact = inv.matrix().inverse();
            EXPECT_LE((exact - inv.inverse()).cwiseAbs().maxCoeff(), 1e-8 * exact.cwiseAbs().maxCoeff());
        }
        EXPECT_LE(inv.residual(), numeric_settings().inverse_residual_limit);
    }
    EXPECT_GE(inv.reconditions(), 3000 / numeric_settings().recondition_interval);
}

TEST(RankOneInverse, SaveLoadRoundTrip)
{
    RandomStream rng(10, 0);
    RankOneInverse inv(3, 2.0);
    for (int t = 0; t < 20; ++t)
        inv.add_outer(uniform_vector(rng, 3, -1, 1));
    RankOneInverse back;
    back.load(nlohmann::json::parse(inv.save().dump()));
    EXPECT_EQ(back.matrix(), inv.matrix());
    EXPECT_EQ(back.inverse(), inv.inverse());
    EXPECT_EQ(back.updates(), inv.updates());
}

// ---------------------------------------------------------------------------

TEST(GeneralizedProjection, FeasiblePointIsFixed)
{
    const Matrix A = vec({4, 1}).asDiagonal();
    const Vector x = vec({0.1, -0.2});
    for (const auto& spec : {NormSpec::euclidean(2), NormSpec::p_norm(1.5, 2), NormSpec::l1(2)})
        EXPECT_EQ(generalized_projection(x, A, 0.5, spec), x);
}

TEST(GeneralizedProjection, IdentityMetricIsRadial)
{
    RandomStream rng(12, 0);
    const NormSpec spec = NormSpec::euclidean(4);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector x = uniform_vector(rng, 4, -3, 3);
        if (x.norm() <= 0.5)
            continue;
        const Vector y = generalized_projection(x, Matrix::Identity(4, 4), 0.5, spec);
        EXPECT_TRUE(y.isApprox(x * (0.5 / x.norm()), 1e-9));
    }
}

TEST(GeneralizedProjection, DiagonalMetricMatchesGrid)
{
    const Matrix A = vec({4, 1}).asDiagonal();
    const Vector x = vec({1, 1});
    const NormSpec spec = NormSpec::euclidean(2);
    const Vector y = generalized_projection(x, A, 0.5, spec);
    EXPECT_LE(y.norm(), 0.5 + 1e-9);
    const double grid = grid_projection_objective(x, A, 0.5, spec, 1000);
    EXPECT_NEAR(objective(y, x, A), grid, 1e-4);
    EXPECT_LE(objective(y, x, A), grid + 1e-12);
}

TEST(GeneralizedProjection, OtherNormsMatchGrid)
{
    RandomStream rng(14, 0);
    const std::vector<NormSpec> specs = {NormSpec::p_norm(1.5, 2), NormSpec::p_norm(1.2, 2), NormSpec::p_norm(3.0, 2),
                                         NormSpec::l1(2), NormSpec::weighted_linf(vec({1.0, 0.5}))};
    for (const auto& spec : specs) {
        for (int trial = 0; trial < 5; ++trial) {
            const Matrix M = Matrix::Random(2, 2);
            const Matrix A = M * M.transpose() + 0.2 * Matrix::Identity(2, 2);
            Vector x = uniform_vector(rng, 2, -3, 3);
            if (norm(x, spec) <= 0.5)
                x *= 2.0 / norm(x, spec);
            const Vector y = generalized_projection(x, A, 0.5, spec);
            EXPECT_LE(norm(y, spec), 0.5 + 1e-9) << spec.describe();
            const double grid = grid_projection_objective(x, A, 0.5, spec, 600);
            EXPECT_LE(objective(y, x, A), grid + 1e-9) << spec.describe();
            EXPECT_NEAR(objective(y, x, A), grid, 2e-2 * (1.0 + grid)) << spec.describe();
        }
    }
}

TEST(GeneralizedProjection, PNormFirstOrderConditions)
{
    // At the solution A(y - x) must point along -dual_map(y) (the inward normal).
    RandomStream rng(15, 0);
    for (double p : {1.2, 1.5, 1.8}) {
        const NormSpec spec = NormSpec::p_norm(p, 5);
        for (int trial = 0; trial < 50; ++trial) {
            const Matrix M = Matrix::Random(5, 5);
            const Matrix A = M * M.transpose() * 50.0 + Matrix::Identity(5, 5);
            const Vector x = uniform_vector(rng, 5, -3, 3);
            if (norm(x, spec) <= 0.5)
                continue;
            const Vector y = generalized_projection(x, A, 0.5, spec);
            EXPECT_NEAR(norm(y, spec), 0.5, 1e-9);
            const Vector residual = A * (x - y);
            const Vector normal = dual_map(y, spec);
            const double mu = residual.dot(normal) / normal.squaredNorm();
            EXPECT_GE(mu, 0.0);
            EXPECT_LE((residual - mu * normal).norm(), 1e-7 * (1.0 + residual.norm()));
        }
    }
}

// ---------------------------------------------------------------------------

TEST(CoinBettingBanach, FreshAndScaledPrediction)
{
    CoinBetting learner(NormSpec::euclidean(3));
    EXPECT_EQ(learner.predict(), Vector::Zero(3));
    learner.update(vec({0.0, 0.0, 0.0}));
    EXPECT_EQ(learner.state().step_count, 1);
    EXPECT_EQ(learner.state().wealth, 1.0);
    EXPECT_EQ(learner.predict(), Vector::Zero(3));
}

TEST(CoinBettingBanach, LoadedStatePredictsProduct)
{
    CoinBetting learner(NormSpec::euclidean(2));
    nlohmann::json state = learner.save();
    state["wealth"] = encode_real(2.0);
    state["v"] = encode_vector(vec({0.25, 0.0}));
    learner.load(state);
    EXPECT_EQ(learner.predict(), vec({0.5, 0.0}));
}

TEST(CoinBettingBanach, FirstStepInTwoDimensions)
{
    CoinBetting learner(NormSpec::euclidean(2));
    learner.update(vec({1.0, 0.0}));
    const Vector v = learner.state().ons.v;
    EXPECT_NEAR(v[0], -0.5, 1e-12);
    EXPECT_NEAR(v[1], 0.0, 1e-12);
    const Matrix A = learner.state().ons.metric.matrix();
    EXPECT_TRUE(A.isApprox(Matrix(vec({2, 1}).asDiagonal()), 1e-15));
    const Vector raw = vec({-kBettingStep / 2.0, 0.0});
    EXPECT_NEAR(raw[0], -1.1094, 1e-4);
    const double grid = grid_projection_objective(raw, A, 0.5, NormSpec::euclidean(2), 1000);
    EXPECT_NEAR(objective(v, raw, A), grid, 1e-4);
}

TEST(CoinBettingBanach, OneDimensionMatchesScalarPath)
{
    RandomStream rng(21, 0);
    for (int run = 0; run < 10; ++run) {
        CoinBetting banach(NormSpec::euclidean(1));
        BettingState1D scalar = make_betting_state_1d(1.0);
        for (int t = 0; t < 1000; ++t) {
            const double g = rng.uniform() < 0.5 ? rng.sign() : rng.uniform(-1.0, 1.0);
            ASSERT_NEAR(banach.predict()[0], predict_1d(scalar), 1e-12 * std::max(1.0, std::abs(scalar.wealth)));
            banach.update(vec({g}));
            scalar = update_1d(scalar, g);
            ASSERT_NEAR(banach.state().ons.v[0], scalar.v, 1e-12);
            ASSERT_NEAR(banach.state().wealth, scalar.wealth, 1e-12 * std::max(1.0, scalar.wealth));
        }
    }
}

TEST(CoinBettingBanach, InvariantsUnderEveryNorm)
{
    RandomStream rng(22, 0);
    const std::vector<NormSpec> specs = {NormSpec::euclidean(4), NormSpec::p_norm(1.5, 4), NormSpec::l1(4),
                                         NormSpec::weighted_linf(vec({1, 2, 0.5, 1}))};
    for (const auto& spec : specs) {
        CoinBetting learner(spec);
        for (int t = 0; t < 400; ++t) {
            learner.update(random_bounded_gradient(rng, spec));
            EXPECT_GT(learner.state().wealth, 0.0);
            EXPECT_LE(norm(learner.state().ons.v, spec), 0.5 + 1e-9) << spec.describe();
            EXPECT_LE(learner.state().ons.metric.residual(), 1e-6);
        }
    }
}

TEST(CoinBettingBanach, RejectsLargeGradient)
{
    CoinBetting learner(NormSpec::p_norm(1.5, 2));
    // dual norm is the 3-norm: (1,1) has 3-norm 2^(1/3) > 1
    EXPECT_THROW(learner.update(vec({1.0, 1.0})), PreconditionError);
}

TEST(CoinBettingBanach, CheckpointResumesBitIdentical)
{
    RandomStream rng(24, 0);
    const NormSpec spec = NormSpec::p_norm(1.5, 3);
    std::vector<Vector> stream;
    for (int t = 0; t < 300; ++t)
        stream.push_back(random_bounded_gradient(rng, spec));
    CoinBetting straight(spec), first(spec);
    for (int t = 0; t < 150; ++t) {
        straight.update(stream[t]);
        first.update(stream[t]);
    }
    CoinBetting resumed(spec);
    resumed.load(nlohmann::json::parse(first.save().dump()));
    for (int t = 150; t < 300; ++t) {
        straight.update(stream[t]);
        resumed.update(stream[t]);
    }
    EXPECT_EQ(straight.predict(), resumed.predict());
    EXPECT_EQ(straight.state().wealth, resumed.state().wealth);
}

// ---------------------------------------------------------------------------

TEST(Ons, ZeroGradientLeavesIterate)
{
    OnsState state = make_ons_state(NormSpec::euclidean(2), OnsConfig{});
    state.v = vec({0.1, 0.2});
    ons_step(state, Vector::Zero(2), OnsConfig{});
    EXPECT_EQ(state.v, vec({0.1, 0.2}));
    EXPECT_EQ(state.steps, 1);
}

TEST(Ons, OneDimensionMatchesBettingFractions)
{
    RandomStream rng(25, 0);
    OnsState ons = make_ons_state(NormSpec::euclidean(1), OnsConfig{});
    BettingState1D scalar = make_betting_state_1d(1.0);
    for (int t = 0; t < 1000; ++t) {
        const double g = rng.uniform(-1.0, 1.0);
        const double z = g / (1.0 - g * ons.v[0]);
        ons_step(ons, vec({z}), OnsConfig{});
        scalar = update_1d(scalar, g);
        ASSERT_NEAR(ons.v[0], scalar.v, 1e-12);
    }
}

TEST(Ons, LogLossRegretBoundOneDimension)
{
    RandomStream rng(26, 0);
    for (int run = 0; run < 10; ++run) {
        OnsState ons = make_ons_state(NormSpec::euclidean(1), OnsConfig{});
        std::vector<double> gs;
        double learner_loss = 0.0, S = 0.0;
        for (int t = 0; t < 500; ++t) {
            const double g = run % 2 ? rng.sign(0.4) : rng.uniform(-1.0, 1.0);
            learner_loss += -std::log1p(-g * ons.v[0]);
            ons_step(ons, vec({g / (1.0 - g * ons.v[0])}), OnsConfig{});
            gs.push_back(g);
            S += g * g;
        }
        double best = std::numeric_limits<double>::infinity();
        for (int i = -5000; i <= 5000; ++i) {
            const double v = i * 1e-4;
            double loss = 0.0;
            for (double g : gs)
                loss += -std::log1p(-g * v);
            best = std::min(best, loss);
        }
        EXPECT_LE(learner_loss - best, bound_ons_logloss(1, S)) << "run " << run;
    }
}

TEST(Ons, ExpConcaveConfiguration)
{
    const OnsConfig config = OnsConfig::for_exp_concave(0.5, 2.0, 1.0);
    EXPECT_DOUBLE_EQ(config.beta, 0.5 * std::min(1.0 / 8.0, 0.5));
    EXPECT_DOUBLE_EQ(config.tau, 1.0 / (config.beta * config.beta));
    EXPECT_DOUBLE_EQ(config.radius, 0.5);
    OnsConfig bad;
    bad.tau = 0.0;
    EXPECT_THROW(bad.validate(), ArgumentError);
}

TEST(Ons, MinimizesStronglyConvexQuadratic)
{
    // f(v) = ||v - c||^2 is exp-concave on the radius ball; ONS drives the
    // average iterate toward c.
    const Vector c = vec({0.2, -0.1});
    const OnsConfig config = OnsConfig::for_exp_concave(0.5, 2.0, 1.0);
    OnsLearner learner(NormSpec::euclidean(2), config);
    Vector average = Vector::Zero(2);
    const int T = 2000;
    for (int t = 0; t < T; ++t) {
        const Vector v = learner.predict();
        average += v / T;
        learner.update(2.0 * (v - c));
    }
    EXPECT_LE((average - c).norm(), 0.05);
}
