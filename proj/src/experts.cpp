#include "olo/experts.hpp"

#include "olo/betting.hpp"
#include "olo/settings.hpp"

namespace olo {

void MultiScaleConfig::validate() const
{
    if (c.size() == 0)
        throw ArgumentError("multiscale: need at least one expert");
    if (pi.size() != c.size())
        throw ArgumentError("multiscale: prior and scales differ in length");
    for (Index i = 0; i < c.size(); ++i) {
        if (!(c[i] > 0.0))
            throw ArgumentError("multiscale: scales must be positive");
        if (!(pi[i] > 0.0))
            throw ArgumentError("multiscale: prior entries must be positive");
    }
    if (std::abs(pi.sum() - 1.0) > 1e-12)
        throw ArgumentError("multiscale: prior must sum to one");
    if (!(eps > 0.0))
        throw ArgumentError("multiscale: eps must be positive");
}

MultiScaleConfig MultiScaleConfig::uniform(Vector c, double eps)
{
    MultiScaleConfig config;
    const Index n = c.size();
    config.c = std::move(c);
    config.pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
    config.eps = eps;
    return config;
}

// ---------------------------------------------------------------------------

CoordinateWise::CoordinateWise(std::vector<LearnerPtr> learners)
    : learners_(std::move(learners))
{
    if (learners_.empty())
        throw ArgumentError("coordwise: need at least one coordinate");
    for (const auto& learner : learners_)
        if (!learner || learner->dim() != 1)
            throw ArgumentError("coordwise: every child must be a 1-D learner");
}

CoordinateWise::CoordinateWise(const CoordinateWise& other)
{
    learners_.reserve(other.learners_.size());
    for (const auto& learner : other.learners_)
        learners_.push_back(learner->clone());
}

CoordinateWise CoordinateWise::coin_betting(const Vector& pi, double eps)
{
    std::vector<LearnerPtr> learners;
    for (Index i = 0; i < pi.size(); ++i)
        learners.push_back(std::make_unique<CoinBetting1D>(eps * pi[i]));
    return CoordinateWise(std::move(learners));
}

Vector CoordinateWise::predict() const
{
    Vector out(dim());
    for (Index i = 0; i < dim(); ++i)
        out[i] = learners_[static_cast<std::size_t>(i)]->predict()[0];
    return out;
}

void CoordinateWise::update(const Vector& gradient)
{
    if (gradient.size() != dim())
        throw ArgumentError("coordwise: gradient dimension mismatch");
    const double size = gradient.lpNorm<Eigen::Infinity>();
    if (!(size <= 1.0 + numeric_settings().gradient_slack))
        throw PreconditionError("coordwise: ||g||_inf must be <= 1, got " + encode_real(size));
    for (Index i = 0; i < dim(); ++i)
        learners_[static_cast<std::size_t>(i)]->update(Vector::Constant(1, gradient[i]));
}

nlohmann::json CoordinateWise::save() const
{
    nlohmann::json children = nlohmann::json::array();
    for (const auto& learner : learners_)
        children.push_back(learner->save());
    return {{"algo", algo()}, {"children", children}};
}

void CoordinateWise::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    const auto& children = state.at("children");
    if (children.size() != learners_.size())
        throw ArgumentError("coordwise: checkpoint has the wrong number of children");
    for (std::size_t i = 0; i < learners_.size(); ++i)
        learners_[i]->load(children.at(i));
}

std::optional<double> CoordinateWise::wealth() const
{
    double total = 0.0;
    for (const auto& learner : learners_) {
        const auto w = learner->wealth();
        if (!w)
            return std::nullopt;
        total += *w;
    }
    return total;
}

// ---------------------------------------------------------------------------

MultiScale::MultiScale(MultiScaleConfig config)
    : config_(std::move(config))
{
    config_.validate();
    auto coords = std::make_unique<CoordinateWise>(CoordinateWise::coin_betting(config_.pi, config_.eps));
    inner_ = std::make_unique<Constrained>(std::move(coords), ConstraintSet::scaled_simplex(config_.c, 1.0));
}

MultiScale::MultiScale(const MultiScale& other)
    : config_(other.config_), inner_(std::make_unique<Constrained>(*other.inner_))
{
}

Vector MultiScale::predict() const
{
    return inner_->predict().cwiseQuotient(config_.c);
}

void MultiScale::update(const Vector& gradient)
{
    if (gradient.size() != dim())
        throw ArgumentError("multiscale: gradient dimension mismatch");
    const double slack = numeric_settings().gradient_slack;
    for (Index i = 0; i < dim(); ++i)
        if (!(std::abs(gradient[i]) <= config_.c[i] + slack))
            throw PreconditionError("multiscale: loss of expert " + std::to_string(i) + " is " +
                                    encode_real(gradient[i]) + ", outside its scale " + encode_real(config_.c[i]));
    inner_->update(gradient.cwiseQuotient(config_.c));
}

nlohmann::json MultiScale::save() const
{
    return {{"algo", algo()}, {"inner", inner_->save()}};
}

void MultiScale::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    inner_->load(state.at("inner"));
}

} // namespace olo
