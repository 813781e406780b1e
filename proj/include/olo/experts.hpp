#pragma once

#include <vector>

#include "olo/reductions.hpp"
#include "olo/simplex.hpp"

namespace olo {

struct MultiScaleConfig
{
    Vector c;       // per-expert loss scale
    Vector pi;      // prior, sums to one
    double eps = 1.0;

    void validate() const;
    static MultiScaleConfig uniform(Vector c, double eps = 1.0);
};

/// N independent 1-D learners, one per coordinate. Losses must satisfy
/// ||g||_inf <= 1.
class CoordinateWise final : public Learner
{
public:
    explicit CoordinateWise(std::vector<LearnerPtr> learners);
    CoordinateWise(const CoordinateWise& other);

    /// Coin-betting children, child i starting with wealth eps * pi_i.
    static CoordinateWise coin_betting(const Vector& pi, double eps);

    Index dim() const override { return static_cast<Index>(learners_.size()); }
    Vector predict() const override;
    void update(const Vector& gradient) override;
    std::string algo() const override { return "coordwise"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<CoordinateWise>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;
    std::optional<double> wealth() const override;

    const Learner& child(Index i) const { return *learners_[static_cast<std::size_t>(i)]; }

private:
    std::vector<LearnerPtr> learners_;
};

/// Experts whose losses live on different scales: |g_i| <= c_i. Runs the
/// coordinate-wise learner under the constrained reduction on
/// W = {z >= 0, sum z_i / c_i = 1} and plays x_i = z_i / c_i.
class MultiScale final : public Learner
{
public:
    explicit MultiScale(MultiScaleConfig config);
    MultiScale(const MultiScale& other);

    Index dim() const override { return config_.c.size(); }
    Vector predict() const override;
    void update(const Vector& gradient) override;
    std::string algo() const override { return "multiscale"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<MultiScale>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;
    /// Records of the underlying constrained learner, in scaled coordinates.
    std::optional<StepRecord> last_step() const override { return inner_->last_step(); }

    const MultiScaleConfig& config() const { return config_; }
    const Constrained& inner() const { return *inner_; }

private:
    MultiScaleConfig config_;
    std::unique_ptr<Constrained> inner_;
};

} // namespace olo
