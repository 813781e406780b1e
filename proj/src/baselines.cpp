#include "olo/baselines.hpp"

#include "olo/betting.hpp"

namespace olo {

namespace {

bool is_euclidean(const NormSpec& spec)
{
    return spec.kind() == NormKind::euclidean || (spec.kind() == NormKind::p_norm && spec.p() == 2.0);
}

} // namespace

BallOgd::BallOgd(const NormSpec& spec)
    : spec_(spec)
{
    if (!is_euclidean(spec))
        throw UnsupportedError("ball-ogd requires a euclidean space, got " + spec.describe());
    state_.w = Vector::Zero(spec.dim());
    state_.sum_g = Vector::Zero(spec.dim());
}

void BallOgd::update(const Vector& gradient)
{
    detail::check_dim(gradient, spec_);
    state_.grad_sq_sum += gradient.squaredNorm();
    if (state_.grad_sq_sum == 0.0)
        return;
    const double eta = std::sqrt(2.0) / (2.0 * std::sqrt(state_.grad_sq_sum));
    Vector next = state_.w - eta * gradient;
    const double length = next.norm();
    if (length > 1.0)
        next /= length;
    state_.w = std::move(next);
}

nlohmann::json BallOgd::save() const
{
    return {
        {"algo", algo()},
        {"w", encode_vector(state_.w)},
        {"grad_sq_sum", encode_real(state_.grad_sq_sum)},
    };
}

void BallOgd::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    state_.w = decode_vector(state.at("w"));
    state_.grad_sq_sum = decode_real(state.at("grad_sq_sum"));
}

Vector ftrl_ball_minimizer(const Vector& s, double sigma, const NormSpec& spec)
{
    // Unconstrained: w = grad (1/2 ||.||_q^2)(-s / sigma); the constrained
    // optimum is its radial rescale onto the unit ball.
    const double q = is_euclidean(spec) ? 2.0 : spec.q();
    const double s_norm = dual_norm(s, spec);
    if (s_norm == 0.0)
        return Vector::Zero(s.size());
    Vector w(s.size());
    for (Index i = 0; i < s.size(); ++i) {
        const double r = std::abs(s[i]) / s_norm;
        w[i] = -(s[i] > 0 ? 1.0 : (s[i] < 0 ? -1.0 : 0.0)) * std::pow(r, q - 1.0) * s_norm / sigma;
    }
    const double length = norm(w, spec);
    if (length > 1.0)
        w /= length;
    return w;
}

BallFtrl::BallFtrl(const NormSpec& spec)
    : spec_(spec)
{
    if (is_euclidean(spec))
        lambda_ = 1.0;
    else if (spec.kind() == NormKind::p_norm && spec.p() <= 2.0)
        lambda_ = convexity_constant(spec);
    else
        throw UnsupportedError("ball-ftrl requires a p-norm with p in (1, 2], got " + spec.describe());
    state_.w = Vector::Zero(spec.dim());
    state_.sum_g = Vector::Zero(spec.dim());
}

void BallFtrl::update(const Vector& gradient)
{
    detail::check_dim(gradient, spec_);
    const double size = dual_norm(gradient, spec_);
    state_.grad_sq_sum += size * size;
    state_.sum_g += gradient;
    if (state_.grad_sq_sum == 0.0)
        return;
    const double sigma = std::sqrt(state_.grad_sq_sum) / std::sqrt(lambda_);
    state_.w = ftrl_ball_minimizer(state_.sum_g, sigma, spec_);
}

nlohmann::json BallFtrl::save() const
{
    return {
        {"algo", algo()},
        {"w", encode_vector(state_.w)},
        {"grad_sq_sum", encode_real(state_.grad_sq_sum)},
        {"sum_g", encode_vector(state_.sum_g)},
    };
}

void BallFtrl::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    state_.w = decode_vector(state.at("w"));
    state_.grad_sq_sum = decode_real(state.at("grad_sq_sum"));
    state_.sum_g = decode_vector(state.at("sum_g"));
}

ProjectedGradient::ProjectedGradient(const NormSpec& spec, double eta, double radius)
    : spec_(spec), eta_(eta), radius_(radius), w_(Vector::Zero(spec.dim()))
{
    if (!(eta > 0.0) || !(radius > 0.0))
        throw ArgumentError("ogd step and radius must be positive");
}

void ProjectedGradient::update(const Vector& gradient)
{
    detail::check_dim(gradient, spec_);
    ++t_;
    w_ = euclidean_ball_projection(w_ - (eta_ / std::sqrt(static_cast<double>(t_))) * gradient, radius_, spec_);
}

nlohmann::json ProjectedGradient::save() const
{
    return {{"algo", algo()}, {"w", encode_vector(w_)}, {"t", t_}};
}

void ProjectedGradient::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    w_ = decode_vector(state.at("w"));
    t_ = state.at("t").get<long>();
}

} // namespace olo
