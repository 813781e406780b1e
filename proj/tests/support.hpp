#pragma once

#include <vector>

#include "olo/adversary.hpp"
#include "olo/learner.hpp"

namespace olo::testing {

/// Plays whatever point it is told to and remembers the gradients it saw.
class ScriptedLearner final : public Learner
{
public:
    explicit ScriptedLearner(Vector point) : point_(std::move(point)) {}

    void set_point(Vector point) { point_ = std::move(point); }
    const std::vector<Vector>& seen() const { return seen_; }

    Index dim() const override { return point_.size(); }
    Vector predict() const override { return point_; }
    void update(const Vector& gradient) override { seen_.push_back(gradient); }
    std::string algo() const override { return "scripted"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<ScriptedLearner>(*this); }
    nlohmann::json save() const override { return {{"algo", algo()}, {"point", encode_vector(point_)}}; }
    void load(const nlohmann::json& state) override { point_ = decode_vector(state.at("point")); }

private:
    Vector point_;
    std::vector<Vector> seen_;
};

Vector uniform_vector(RandomStream& rng, Index d, double lo, double hi);
/// Random direction rescaled to dual norm `size`.
Vector random_gradient(RandomStream& rng, const NormSpec& spec, double size);
/// Random gradient with dual norm uniform in [0, 1].
Vector random_bounded_gradient(RandomStream& rng, const NormSpec& spec);

/// min ||x - y||_1 over {y >= 0, sum y_i / c_i = k} by enumerating the
/// vertices of the piecewise-linear pieces: every coordinate but one sits at
/// 0 or at its kink x_i, the remaining one absorbs the budget.
double brute_simplex_distance(const Vector& x, const Vector& c, double k);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Shared sign stream for the 1-D experiments.
std::vector<double> rademacher_stream(std::uint64_t seed, Index T);

} // namespace olo::testing
