#pragma once

#include <variant>

#include <json.hpp>

#include "olo/simplex.hpp"

namespace olo {

/// Centered norm ball {x : ||x|| <= radius}.
struct NormBall
{
    double radius = 1.0;
    NormSpec spec = NormSpec::euclidean(1);
};

/// Convex domain W handled by the constrained and curvature reductions.
class ConstraintSet
{
public:
    static ConstraintSet norm_ball(double radius, const NormSpec& spec);
    static ConstraintSet scaled_simplex(Vector c, double k = 1.0);

    Index dim() const;
    /// Norm in which distances to W are measured (l1 for the simplex).
    const NormSpec& spec() const { return spec_; }
    bool is_ball() const { return std::holds_alternative<NormBall>(set_); }
    const NormBall& ball() const { return std::get<NormBall>(set_); }
    const ScaledSimplex& simplex() const { return std::get<ScaledSimplex>(set_); }

    bool contains(const Vector& x) const;

private:
    ConstraintSet(std::variant<NormBall, ScaledSimplex> set, NormSpec spec)
        : set_(std::move(set)), spec_(std::move(spec))
    {
    }

    std::variant<NormBall, ScaledSimplex> set_;
    NormSpec spec_;
};

/// S_W(x) = inf_{d in W} ||x - d||.
double distance(const Vector& x, const ConstraintSet& set);
/// Canonical element of Pi_W(x): radial shrink for balls, greedy selection
/// for the scaled simplex.
Vector project(const Vector& x, const ConstraintSet& set);
/// Element of the subdifferential of S_W at x; zero on W.
Vector distance_subgradient(const Vector& x, const ConstraintSet& set);

/// JSON: {"kind":"norm_ball","radius":r} (space taken from the caller) or
/// {"kind":"scaled_simplex","c":[...],"k":k}.
ConstraintSet constraint_from_json(const nlohmann::json& j, const NormSpec& space);
nlohmann::json constraint_to_json(const ConstraintSet& set);

} // namespace olo
