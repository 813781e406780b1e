#pragma once

#include "olo/learner.hpp"

namespace olo {

/// Shared state of the unit-ball learners used as direction learners.
struct BallLearnerState
{
    Vector w;                   // iterate, norm(w) <= 1
    double grad_sq_sum = 0.0;   // sum of squared dual norms
    Vector sum_g;               // running gradient sum (FTRL only)
};

/// Online gradient descent on the euclidean unit ball with the adaptive step
/// eta_t = sqrt(2) / (2 sqrt(sum_{i<=t} ||g_i||^2)).
class BallOgd final : public Learner
{
public:
    explicit BallOgd(const NormSpec& spec);

    Index dim() const override { return spec_.dim(); }
    Vector predict() const override { return state_.w; }
    void update(const Vector& gradient) override;
    std::string algo() const override { return "ball-ogd"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<BallOgd>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;

    const BallLearnerState& state() const { return state_; }

private:
    NormSpec spec_;
    BallLearnerState state_;
};

/// Follow-the-regularized-leader on the p-norm unit ball, p in (1, 2], with
/// regularizer sqrt(sum ||g||_*^2 / lambda) * 1/2 ||w||_p^2.
class BallFtrl final : public Learner
{
public:
    explicit BallFtrl(const NormSpec& spec);

    Index dim() const override { return spec_.dim(); }
    Vector predict() const override { return state_.w; }
    void update(const Vector& gradient) override;
    std::string algo() const override { return "ball-ftrl"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<BallFtrl>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;

    const BallLearnerState& state() const { return state_; }

private:
    NormSpec spec_;
    double lambda_;
    BallLearnerState state_;
};

/// Closed-form minimizer of <s, w> + sigma/2 ||w||_p^2 over the p-norm unit
/// ball (sigma > 0). Exposed for testing.
Vector ftrl_ball_minimizer(const Vector& s, double sigma, const NormSpec& spec);

/// Plain projected online gradient descent on a norm ball of the given
/// radius, step eta / sqrt(t). Reference point for comparisons.
class ProjectedGradient final : public Learner
{
public:
    ProjectedGradient(const NormSpec& spec, double eta, double radius);

    Index dim() const override { return spec_.dim(); }
    Vector predict() const override { return w_; }
    void update(const Vector& gradient) override;
    std::string algo() const override { return "ogd"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<ProjectedGradient>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;

private:
    NormSpec spec_;
    double eta_;
    double radius_;
    Vector w_;
    long t_ = 0;
};

} // namespace olo
