#include "olo/reductions.hpp"

#include "olo/settings.hpp"

namespace olo {

namespace {

void require_bound(const Vector& g, const NormSpec& spec, double bound, const char* who)
{
    const double size = dual_norm(g, spec);
    if (!std::isfinite(size) || size > bound + numeric_settings().gradient_slack)
        throw PreconditionError(std::string(who) + ": gradient dual norm " + encode_real(size) +
                                " exceeds bound " + encode_real(bound));
}

} // namespace

// ---------------------------------------------------------------------------

DimensionFree::DimensionFree(LearnerPtr magnitude, LearnerPtr direction, const NormSpec& spec)
    : magnitude_(std::move(magnitude)), direction_(std::move(direction)), spec_(spec)
{
    if (!magnitude_ || !direction_)
        throw ArgumentError("dimfree needs both a magnitude and a direction learner");
    if (magnitude_->dim() != 1)
        throw ArgumentError("dimfree magnitude learner must be one-dimensional");
    if (direction_->dim() != spec_.dim())
        throw ArgumentError("dimfree direction learner dimension does not match the space");
}

DimensionFree::DimensionFree(const DimensionFree& other)
    : magnitude_(other.magnitude_->clone()), direction_(other.direction_->clone()), spec_(other.spec_),
      last_(other.last_), last_direction_(other.last_direction_)
{
}

Vector DimensionFree::predict() const
{
    return magnitude_->predict()[0] * direction_->predict();
}

void DimensionFree::update(const Vector& gradient)
{
    detail::check_dim(gradient, spec_);
    require_bound(gradient, spec_, 1.0, "dimfree");
    const Vector y = direction_->predict();
    const double z = magnitude_->predict()[0];
    const double s = gradient.dot(y);
    const double bound = dual_norm(gradient, spec_);
    if (std::abs(s) > bound + numeric_settings().tolerance)
        throw NumericError("dimfree: |<g, y>| exceeds ||g||_*; direction left the unit ball", std::abs(s) - bound);
    magnitude_->update(Vector::Constant(1, s));
    direction_->update(gradient);
    last_ = StepRecord{Vector::Constant(1, z), Vector::Constant(1, s)};
    last_direction_ = y;
}

nlohmann::json DimensionFree::save() const
{
    return {{"algo", algo()}, {"magnitude", magnitude_->save()}, {"direction", direction_->save()}};
}

void DimensionFree::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    magnitude_->load(state.at("magnitude"));
    direction_->load(state.at("direction"));
}

// ---------------------------------------------------------------------------

Constrained::Constrained(LearnerPtr inner, ConstraintSet constraint, double lipschitz)
    : inner_(std::move(inner)), constraint_(std::move(constraint)), lipschitz_(lipschitz)
{
    if (!inner_)
        throw ArgumentError("constrained reduction needs an inner learner");
    if (inner_->dim() != constraint_.dim())
        throw ArgumentError("constrained: inner learner and constraint set differ in dimension");
    if (!(lipschitz_ > 0.0))
        throw ArgumentError("constrained: gradient bound must be positive");
}

Constrained::Constrained(const Constrained& other)
    : inner_(other.inner_->clone()), constraint_(other.constraint_), lipschitz_(other.lipschitz_), last_(other.last_)
{
}

Vector Constrained::predict() const
{
    return project(inner_->predict(), constraint_);
}

void Constrained::update(const Vector& gradient)
{
    const NormSpec& spec = constraint_.spec();
    detail::check_dim(gradient, spec);
    require_bound(gradient, spec, lipschitz_, "constrained");
    const Vector z = inner_->predict();
    const Vector surrogate = 0.5 * (gradient + dual_norm(gradient, spec) * distance_subgradient(z, constraint_));
    inner_->update(surrogate);
    last_ = StepRecord{z, surrogate};
}

nlohmann::json Constrained::save() const
{
    return {{"algo", algo()}, {"inner", inner_->save()}};
}

void Constrained::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    inner_->load(state.at("inner"));
}

// ---------------------------------------------------------------------------

Curvature::Curvature(LearnerPtr base, ConstraintSet constraint, std::optional<Vector> start,
                     double base_gradient_scale)
    : base_(std::move(base)), constraint_(std::move(constraint)), base_gradient_scale_(base_gradient_scale)
{
    if (!base_)
        throw ArgumentError("curvature reduction needs a base learner");
    if (base_->dim() != constraint_.dim())
        throw ArgumentError("curvature: base learner and constraint set differ in dimension");
    if (!(base_gradient_scale_ > 0.0))
        throw ArgumentError("curvature: base gradient scale must be positive");
    xbar0_ = start ? *start : project(Vector::Zero(constraint_.dim()), constraint_);
    detail::check_dim(xbar0_, constraint_.spec());
    if (!constraint_.contains(xbar0_))
        throw ArgumentError("curvature: starting point must lie in W");
    xbar_ = xbar0_;
}

Curvature::Curvature(const Curvature& other)
    : base_(other.base_->clone()), constraint_(other.constraint_), xbar0_(other.xbar0_), xbar_(other.xbar_),
      weight_sum_(other.weight_sum_), base_gradient_scale_(other.base_gradient_scale_), last_(other.last_)
{
}

Vector Curvature::predict() const
{
    return project(base_->predict() + xbar_, constraint_);
}

void Curvature::update(const Vector& gradient)
{
    const NormSpec& spec = constraint_.spec();
    detail::check_dim(gradient, spec);
    require_bound(gradient, spec, 1.0, "curvature");
    const Vector z = base_->predict() + xbar_;
    const Vector x = project(z, constraint_);
    const Vector adjusted = gradient + dual_norm(gradient, spec) * distance_subgradient(z, constraint_);
    const double size = dual_norm(adjusted, spec);
    const double weight = size * size;
    xbar_ = (xbar_ * weight_sum_ + weight * x) / (weight_sum_ + weight);
    weight_sum_ += weight;
    base_->update(adjusted / base_gradient_scale_);
    last_ = StepRecord{z, adjusted};
}

nlohmann::json Curvature::save() const
{
    return {
        {"algo", algo()},
        {"base", base_->save()},
        {"xbar", encode_vector(xbar_)},
        {"weight_sum", encode_real(weight_sum_)},
    };
}

void Curvature::load(const nlohmann::json& state)
{
    expect_algo(state, algo());
    base_->load(state.at("base"));
    xbar_ = decode_vector(state.at("xbar"));
    weight_sum_ = decode_real(state.at("weight_sum"));
}

} // namespace olo
