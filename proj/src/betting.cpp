#include "olo/betting.hpp"

#include <algorithm>
#include <limits>

namespace olo {

namespace {

void require_finite(const Vector& g)
{
    if (!g.allFinite())
        throw PreconditionError("gradient has non-finite entries");
}

} // namespace

// ---------------------------------------------------------------------------
// 1-D

BettingState1D make_betting_state_1d(double epsilon)
{
    if (!(epsilon > 0.0))
        throw ArgumentError("initial wealth epsilon must be positive");
    BettingState1D state;
    state.epsilon = epsilon;
    state.wealth = epsilon;
    return state;
}

double predict_1d(const BettingState1D& state)
{
    return state.v * state.wealth;
}

BettingState1D update_1d(BettingState1D state, double g)
{
    const auto& settings = numeric_settings();
    if (!std::isfinite(g) || std::abs(g) > 1.0 + settings.gradient_slack)
        throw PreconditionError("coin outcome must satisfy |g| <= 1, got " + encode_real(g));

    const double w = predict_1d(state);
    state.last_w = w;
    state.wealth -= g * w;
    if (!std::isfinite(state.wealth))
        throw NumericError("wealth left the double range", state.wealth);

    const double denominator = 1.0 - g * state.v;
    if (denominator < settings.min_denominator)
        throw NumericError("betting denominator 1 - g v below floor", denominator);
    const double z = g / denominator;
    state.A += z * z;
    state.v = std::clamp(state.v - kBettingStep * z / state.A, -0.5, 0.5);
    return state;
}

CoinBetting1D::CoinBetting1D(double epsilon)
    : state_(make_betting_state_1d(epsilon))
{
}

Vector CoinBetting1D::predict() const
{
    return Vector::Constant(1, predict_1d(state_));
}

void CoinBetting1D::update(const Vector& gradient)
{
    if (gradient.size() != 1)
        throw ArgumentError("coin1d expects a scalar gradient");
    state_ = update_1d(state_, gradient[0]);
}

nlohmann::json CoinBetting1D::save() const
{
    return {
        {"algo", algo()},
        {"epsilon", encode_real(state_.epsilon)},
        {"wealth", encode_real(state_.wealth)},
        {"v", encode_real(state_.v)},
        {"A", encode_real(state_.A)},
        {"last_w", encode_real(state_.last_w)},
    };
}

void CoinBetting1D::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    state_.epsilon = decode_real(state.at("epsilon"));
    state_.wealth = decode_real(state.at("wealth"));
    state_.v = decode_real(state.at("v"));
    state_.A = decode_real(state.at("A"));
    state_.last_w = decode_real(state.at("last_w"));
}

// ---------------------------------------------------------------------------
// A and A^{-1}

RankOneInverse::RankOneInverse(Index dim, double tau)
    : a_(tau * Matrix::Identity(dim, dim)), a_inv_(Matrix::Identity(dim, dim) / tau)
{
}

void RankOneInverse::add_outer(const Vector& z)
{
    const auto& settings = numeric_settings();
    const Vector az = a_inv_ * z;
    const double denominator = 1.0 + z.dot(az);
    a_inv_.noalias() -= (az * az.transpose()) / denominator;
    a_.noalias() += z * z.transpose();
    ++updates_;

    if (settings.recondition_interval > 0 && updates_ % settings.recondition_interval == 0) {
        recondition();
        return;
    }
    // O(d^2) probe along the new direction; a full residual costs O(d^3).
    const Vector probe = a_ * (a_inv_ * z) - z;
    const double scale = std::max(1.0, z.lpNorm<Eigen::Infinity>());
    if (!(probe.lpNorm<Eigen::Infinity>() <= 1e-3 * settings.inverse_residual_limit * scale))
        recondition();
}

void RankOneInverse::recondition()
{
    Eigen::LLT<Matrix> factor(a_);
    if (factor.info() != Eigen::Success)
        throw NumericError("ONS metric lost positive definiteness", std::numeric_limits<double>::infinity());
    a_inv_ = factor.solve(Matrix::Identity(a_.rows(), a_.cols()));
    ++reconditions_;
}

double RankOneInverse::residual() const
{
    if (a_.size() == 0)
        return 0.0;
    return (a_ * a_inv_ - Matrix::Identity(a_.rows(), a_.cols())).cwiseAbs().maxCoeff();
}

nlohmann::json RankOneInverse::save() const
{
    return {
        {"A", encode_matrix(a_)},
        {"A_inv", encode_matrix(a_inv_)},
        {"updates", updates_},
        {"reconditions", reconditions_},
    };
}

void RankOneInverse::load(const nlohmann::json& j)
{
    a_ = decode_matrix(j.at("A"));
    a_inv_ = decode_matrix(j.at("A_inv"));
    updates_ = j.at("updates").get<long>();
    reconditions_ = j.at("reconditions").get<long>();
}

// ---------------------------------------------------------------------------
// ONS

OnsConfig OnsConfig::for_exp_concave(double alpha, double gradient_bound, double diameter)
{
    if (!(alpha > 0.0) || !(gradient_bound > 0.0) || !(diameter > 0.0))
        throw ArgumentError("exp-concavity, gradient bound and diameter must be positive");
    OnsConfig config;
    config.beta = 0.5 * std::min(1.0 / (4.0 * gradient_bound * diameter), alpha);
    config.tau = 1.0 / (config.beta * config.beta * diameter * diameter);
    config.radius = diameter / 2.0;
    return config;
}

void OnsConfig::validate() const
{
    if (!(beta > 0.0) || !(tau > 0.0) || !(radius > 0.0))
        throw ArgumentError("ONS beta, tau and radius must be positive");
}

OnsState make_ons_state(const NormSpec& spec, const OnsConfig& config)
{
    config.validate();
    OnsState state;
    state.spec = spec;
    state.v = Vector::Zero(spec.dim());
    state.metric = RankOneInverse(spec.dim(), config.tau);
    return state;
}

namespace {

/// Euclidean projection onto the p-norm ball, p in (1, inf). Each coordinate
/// of the answer solves t + nu p t^(p-1) = |x_i| for the multiplier nu that
/// puts the point on the sphere.
Vector project_p_ball(const Vector& x, double radius, double p)
{
    const Vector a = x.cwiseAbs();
    auto coordinate = [p](double target, double nu) {
        if (target == 0.0)
            return 0.0;
        double lo = 0.0;
        double hi = target;
        double t = target / (1.0 + nu * p * std::pow(target, p - 2.0));
        for (int it = 0; it < 100; ++it) {
            const double residual = t + nu * p * std::pow(t, p - 1.0) - target;
            if (residual > 0.0)
                hi = t;
            else
                lo = t;
            const double slope = 1.0 + nu * p * (p - 1.0) * std::pow(t, p - 2.0);
            double next = t - residual / slope;
            if (!(next > lo && next < hi) || !std::isfinite(next))
                next = 0.5 * (lo + hi);
            if (std::abs(next - t) <= 1e-15 * target || hi - lo <= 1e-15 * target)
                return next;
            t = next;
        }
        return t;
    };
    auto mass = [&](double nu) {
        double acc = 0.0;
        for (Index i = 0; i < a.size(); ++i)
            acc += std::pow(coordinate(a[i], nu) / radius, p);
        return acc;
    };

    double nu_lo = 0.0;
    double nu_hi = 1.0;
    while (mass(nu_hi) > 1.0)
        nu_hi *= 2.0;
    for (int it = 0; it < 200 && nu_hi - nu_lo > 1e-15 * nu_hi; ++it) {
        const double mid = 0.5 * (nu_lo + nu_hi);
        if (mass(mid) > 1.0)
            nu_lo = mid;
        else
            nu_hi = mid;
    }
    Vector y(x.size());
    for (Index i = 0; i < x.size(); ++i)
        y[i] = std::copysign(coordinate(a[i], nu_hi), x[i]);
    return y;
}

/// Euclidean projection onto the l1 ball via the sorted-threshold rule.
Vector project_l1_ball(const Vector& x, double radius)
{
    Vector mags = x.cwiseAbs();
    std::vector<double> sorted(mags.begin(), mags.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cumulative += sorted[k];
        const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
        if (sorted[k] > candidate)
            theta = candidate;
    }
    Vector y(x.size());
    for (Index i = 0; i < x.size(); ++i)
        y[i] = std::copysign(std::max(mags[i] - theta, 0.0), x[i]);
    return y;
}

/// Lagrangian route for the euclidean ball: y(mu) = (A + mu I)^{-1} A x,
/// with mu >= 0 found by bisection on ||y(mu)|| = radius.
Vector project_euclidean_metric(const Vector& x, const Matrix& A, double radius)
{
    const auto& settings = numeric_settings();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A);
    if (eig.info() != Eigen::Success)
        throw NumericError("eigendecomposition of the projection metric failed", 0.0);
    const Vector& lambda = eig.eigenvalues();
    const Vector b = eig.eigenvectors().transpose() * x;
    const Vector c = lambda.cwiseProduct(b);

    auto length = [&](double mu) { return (c.array() / (lambda.array() + mu)).matrix().norm(); };

    double lo = 0.0;
    double hi = c.norm() / radius;
    double gap = std::abs(length(hi) - radius);
    int it = 0;
    for (; it < settings.projection_max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double len = length(mid);
        if (len > radius)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi)
            break;
    }
    gap = std::abs(length(hi) - radius);
    if (it == settings.projection_max_iterations && gap > settings.bisection_tolerance)
        throw NumericError("generalized projection bisection did not converge", gap);
    const Vector coeffs = (c.array() / (lambda.array() + hi)).matrix();
    return eig.eigenvectors() * coeffs;
}

/// Damped Newton on the dual of min (y - x)^T A (y - x) s.t. ||y||_p <= r,
///   F(lam) = 2 <lam, x> + 2 r ||lam||_q + lam^T A^{-1} lam,
/// smooth for q >= 2. The primal point is recovered as y = -r u(lam), where
/// u(lam) is the unit p-norm vector attaining <lam, u> = ||lam||_q.
Vector project_dual_newton(const Vector& x, const Matrix& A, double radius, double p)
{
    const auto& settings = numeric_settings();
    const double q = p / (p - 1.0);
    const Index d = x.size();
    const Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericError("projection metric is not positive definite", 0.0);
    const Matrix A_inv = llt.solve(Matrix::Identity(d, d));

    auto q_norm = [&](const Vector& lam) { return detail::lp_norm(lam, q); };
    auto objective = [&](const Vector& lam) {
        return 2.0 * lam.dot(x) + 2.0 * radius * q_norm(lam) + lam.dot(A_inv * lam);
    };
    auto attaining = [&](const Vector& lam, double n) {
        Vector u(d);
        for (Index i = 0; i < d; ++i)
            u[i] = std::copysign(std::pow(std::abs(lam[i]) / n, q - 1.0), lam[i]);
        return u;
    };

    Vector start = x * (radius / detail::lp_norm(x, p));
    Vector lam = A * (start - x);
    double value = objective(lam);
    double decrement = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < settings.projection_max_iterations; ++it) {
        const double n = q_norm(lam);
        if (!(n > 0.0))
            throw NumericError("dual projection iterate collapsed to zero", value);
        const Vector u = attaining(lam, n);
        const Vector grad = 2.0 * x + 2.0 * radius * u + 2.0 * (A_inv * lam);
        Matrix hess = 2.0 * A_inv - (2.0 * radius * (q - 1.0) / n) * (u * u.transpose());
        for (Index i = 0; i < d; ++i)
            hess(i, i) += 2.0 * radius * (q - 1.0) / n * std::pow(std::abs(lam[i]) / n, q - 2.0);
        const Eigen::LDLT<Matrix> solver(hess);
        const Vector step = -solver.solve(grad);
        decrement = -grad.dot(step);
        if (!(decrement > 1e-24 * std::max(1.0, std::abs(value))) || step.norm() <= 1e-15 * lam.norm())
            break;
        double t = 1.0;
        bool moved = false;
        for (int backtrack = 0; backtrack < 60; ++backtrack) {
            const Vector candidate = lam + t * step;
            const double candidate_value = objective(candidate);
            if (candidate_value < value && candidate_value <= value - 0.25 * t * decrement) {
                lam = candidate;
                value = candidate_value;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved)
            break;
    }
    if (it == settings.projection_max_iterations)
        throw NumericError("dual Newton projection hit the iteration cap", decrement);
    return -radius * attaining(lam, q_norm(lam));
}

/// Projected gradient descent with backtracking on (y - x)^T A (y - x).
Vector project_descent(const Vector& x, const Matrix& A, double radius, const NormSpec& spec)
{
    const auto& settings = numeric_settings();
    auto objective = [&](const Vector& y) {
        const Vector diff = y - x;
        return diff.dot(A * diff);
    };
    Vector y = x * (radius / norm(x, spec));
    double value = objective(y);
    double step = 0.5 / A.diagonal().maxCoeff();
    for (int it = 0; it < settings.projection_max_iterations; ++it) {
        const Vector grad = 2.0 * (A * (y - x));
        step *= 2.0;
        Vector candidate;
        double candidate_value = 0.0;
        for (int backtrack = 0; backtrack < 60; ++backtrack) {
            candidate = euclidean_ball_projection(y - step * grad, radius, spec);
            candidate_value = objective(candidate);
            const Vector move = candidate - y;
            if (candidate_value <= value + grad.dot(move) + move.squaredNorm() / (2.0 * step))
                break;
            step *= 0.5;
        }
        const double improvement = value - candidate_value;
        if (improvement < 0.0)
            return y;
        y = candidate;
        value = candidate_value;
        if (improvement < settings.descent_improvement)
            return y;
    }
    throw NumericError("generalized projection descent hit the iteration cap", value);
}

} // namespace

Vector euclidean_ball_projection(const Vector& x, double radius, const NormSpec& spec)
{
    const double length = norm(x, spec);
    if (length <= radius)
        return x;
    switch (spec.kind()) {
    case NormKind::euclidean:
        return x * (radius / length);
    case NormKind::p_norm:
        if (spec.p() == 2.0)
            return x * (radius / length);
        return project_p_ball(x, radius, spec.p());
    case NormKind::l1:
        return project_l1_ball(x, radius);
    case NormKind::weighted_linf: {
        const Vector bound = radius * spec.scales();
        return x.cwiseMin(bound).cwiseMax(-bound);
    }
    }
    return x;
}

Vector generalized_projection(const Vector& x, const Matrix& A, double radius, const NormSpec& spec)
{
    detail::check_dim(x, spec);
    if (A.rows() != x.size() || A.cols() != x.size())
        throw ArgumentError("projection metric has the wrong shape");
    if (!(radius > 0.0))
        throw ArgumentError("projection radius must be positive");
    const double length = norm(x, spec);
    if (length <= radius)
        return x;
    // In one dimension every ball is an interval and the metric is irrelevant.
    if (x.size() == 1)
        return Vector::Constant(1, std::copysign(radius * (std::abs(x[0]) / length), x[0]));
    if (spec.kind() == NormKind::euclidean || (spec.kind() == NormKind::p_norm && spec.p() == 2.0))
        return project_euclidean_metric(x, A, radius);
    if (spec.kind() == NormKind::p_norm && spec.p() < 2.0)
        return project_dual_newton(x, A, radius, spec.p());
    return project_descent(x, A, radius, spec);
}

void ons_step(OnsState& state, const Vector& z, const OnsConfig& config)
{
    detail::check_dim(z, state.spec);
    require_finite(z);
    ++state.steps;
    if (z.isZero(0.0))
        return;
    state.metric.add_outer(z);
    const Vector raw = state.v - (state.metric.inverse() * z) / config.beta;
    state.v = generalized_projection(raw, state.metric.matrix(), config.radius, state.spec);
}

OnsLearner::OnsLearner(const NormSpec& spec, const OnsConfig& config)
    : config_(config), state_(make_ons_state(spec, config))
{
}

void OnsLearner::update(const Vector& gradient)
{
    ons_step(state_, gradient, config_);
}

nlohmann::json OnsLearner::save() const
{
    return {
        {"algo", algo()},
        {"v", encode_vector(state_.v)},
        {"metric", state_.metric.save()},
        {"steps", state_.steps},
    };
}

void OnsLearner::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    state_.v = decode_vector(state.at("v"));
    state_.metric.load(state.at("metric"));
    state_.steps = state.at("steps").get<long>();
}

// ---------------------------------------------------------------------------
// Banach coin betting

CoinBetting::CoinBetting(const NormSpec& spec, double epsilon)
{
    if (!(epsilon > 0.0))
        throw ArgumentError("initial wealth epsilon must be positive");
    state_.epsilon = epsilon;
    state_.wealth = epsilon;
    state_.ons = make_ons_state(spec, OnsConfig{});
    state_.last_w = Vector::Zero(spec.dim());
}

Vector CoinBetting::predict() const
{
    return state_.ons.v * state_.wealth;
}

void CoinBetting::update(const Vector& gradient)
{
    const auto& settings = numeric_settings();
    detail::check_dim(gradient, spec());
    require_finite(gradient);
    const double size = dual_norm(gradient, spec());
    if (size > 1.0 + settings.gradient_slack)
        throw PreconditionError("coin outcome must have dual norm <= 1, got " + encode_real(size));

    ++state_.step_count;
    if (gradient.isZero(0.0))
        return;

    const Vector w = predict();
    const double wealth = state_.wealth - gradient.dot(w);
    if (!std::isfinite(wealth))
        throw NumericError("wealth left the double range", wealth);
    state_.last_w = w;
    state_.wealth = wealth;

    const double denominator = 1.0 - gradient.dot(state_.ons.v);
    if (denominator < settings.min_denominator)
        throw NumericError("betting denominator 1 - <g, v> below floor", denominator);
    ons_step(state_.ons, gradient / denominator, OnsConfig{});
}

nlohmann::json CoinBetting::save() const
{
    return {
        {"algo", algo()},
        {"epsilon", encode_real(state_.epsilon)},
        {"wealth", encode_real(state_.wealth)},
        {"v", encode_vector(state_.ons.v)},
        {"metric", state_.ons.metric.save()},
        {"ons_steps", state_.ons.steps},
        {"last_w", encode_vector(state_.last_w)},
        {"step_count", state_.step_count},
    };
}

void CoinBetting::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    state_.epsilon = decode_real(state.at("epsilon"));
    state_.wealth = decode_real(state.at("wealth"));
    state_.ons.v = decode_vector(state.at("v"));
    state_.ons.metric.load(state.at("metric"));
    state_.ons.steps = state.at("ons_steps").get<long>();
    state_.last_w = decode_vector(state.at("last_w"));
    state_.step_count = state.at("step_count").get<long>();
}

} // namespace olo
