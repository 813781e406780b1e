#pragma once

#include "olo/constraint.hpp"
#include "olo/learner.hpp"

namespace olo {

/// Magnitude x direction reduction: plays w = z y with z from a 1-D learner
/// and y from a unit-ball learner. The magnitude learner sees s = <g, y>, the
/// direction learner sees g.
class DimensionFree final : public Learner
{
public:
    DimensionFree(LearnerPtr magnitude, LearnerPtr direction, const NormSpec& spec);
    DimensionFree(const DimensionFree& other);

    Index dim() const override { return spec_.dim(); }
    Vector predict() const override;
    void update(const Vector& gradient) override;
    std::string algo() const override { return "dimfree"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<DimensionFree>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;
    std::optional<double> wealth() const override { return magnitude_->wealth(); }
    /// inner_point = (z), inner_gradient = (s) for the magnitude learner.
    std::optional<StepRecord> last_step() const override { return last_; }

    const Learner& magnitude() const { return *magnitude_; }
    const Learner& direction() const { return *direction_; }
    /// Direction iterate y_t used in the most recent update.
    const Vector& last_direction() const { return last_direction_; }

private:
    LearnerPtr magnitude_;
    LearnerPtr direction_;
    NormSpec spec_;
    std::optional<StepRecord> last_;
    Vector last_direction_;
};

/// Constrained-domain reduction. Plays Pi_W(z) for the child's z and sends the
/// child a subgradient of 1/2 (<g, x> + ||g||_* S_W(x)) at z.
class Constrained final : public Learner
{
public:
    Constrained(LearnerPtr inner, ConstraintSet constraint, double lipschitz = 1.0);
    Constrained(const Constrained& other);

    Index dim() const override { return constraint_.dim(); }
    Vector predict() const override;
    void update(const Vector& gradient) override;
    std::string algo() const override { return "constrained"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<Constrained>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;
    std::optional<StepRecord> last_step() const override { return last_; }

    const Learner& inner() const { return *inner_; }
    const ConstraintSet& constraint() const { return constraint_; }

private:
    LearnerPtr inner_;
    ConstraintSet constraint_;
    double lipschitz_;
    std::optional<StepRecord> last_;
};

/// Curvature adaptation: plays Pi_W(w + xbar) where xbar is the running
/// average of past plays weighted by ||g~||_*^2, and forwards
/// g~ = g + ||g||_* dS_W(z) to the base learner. Because ||g~||_* can reach
/// 2||g||_*, the base learner receives g~ / base_gradient_scale.
class Curvature final : public Learner
{
public:
    Curvature(LearnerPtr base, ConstraintSet constraint, std::optional<Vector> start = std::nullopt,
              double base_gradient_scale = 2.0);
    Curvature(const Curvature& other);

    Index dim() const override { return constraint_.dim(); }
    Vector predict() const override;
    void update(const Vector& gradient) override;
    std::string algo() const override { return "curvature"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<Curvature>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;
    /// inner_point = z_t, inner_gradient = g~_t (before base scaling).
    std::optional<StepRecord> last_step() const override { return last_; }

    const Vector& average() const { return xbar_; }
    const Vector& start() const { return xbar0_; }
    double weight_sum() const { return weight_sum_; }
    const Learner& base() const { return *base_; }

private:
    LearnerPtr base_;
    ConstraintSet constraint_;
    Vector xbar0_;
    Vector xbar_;
    double weight_sum_ = 1.0;
    double base_gradient_scale_;
    std::optional<StepRecord> last_;
};

} // namespace olo
