#include "olo/constraint.hpp"

namespace olo {

ConstraintSet ConstraintSet::norm_ball(double radius, const NormSpec& spec)
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ArgumentError("norm ball radius must be positive");
    return ConstraintSet(NormBall{radius, spec}, spec);
}

ConstraintSet ConstraintSet::scaled_simplex(Vector c, double k)
{
    ScaledSimplex simplex(std::move(c), k);
    const Index n = simplex.dim();
    return ConstraintSet(std::move(simplex), NormSpec::l1(n));
}

Index ConstraintSet::dim() const
{
    return spec_.dim();
}

bool ConstraintSet::contains(const Vector& x) const
{
    if (is_ball())
        return norm(x, spec_) <= ball().radius;
    return simplex().contains(x);
}

double distance(const Vector& x, const ConstraintSet& set)
{
    if (set.is_ball())
        return std::max(0.0, norm(x, set.spec()) - set.ball().radius);
    return set.simplex().distance(x);
}

Vector project(const Vector& x, const ConstraintSet& set)
{
    if (set.is_ball()) {
        const double length = norm(x, set.spec());
        if (length <= set.ball().radius)
            return x;
        return x * (set.ball().radius / length);
    }
    return set.simplex().project(x);
}

Vector distance_subgradient(const Vector& x, const ConstraintSet& set)
{
    detail::check_dim(x, set.spec());
    if (set.contains(x))
        return Vector::Zero(x.size());
    if (set.is_ball())
        return norm_subgradient(x - project(x, set), set.spec());
    return set.simplex().distance_subgradient(x);
}

ConstraintSet constraint_from_json(const nlohmann::json& j, const NormSpec& space)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "norm_ball") {
        NormSpec spec = space;
        if (j.contains("space"))
            spec = j.at("space").get<NormSpec>();
        return ConstraintSet::norm_ball(j.value("radius", 1.0), spec);
    }
    if (kind == "scaled_simplex") {
        const auto c = j.at("c").get<std::vector<double>>();
        return ConstraintSet::scaled_simplex(Eigen::Map<const Vector>(c.data(), static_cast<Index>(c.size())),
                                             j.value("k", 1.0));
    }
    throw ArgumentError("unknown constraint kind '" + kind + "'");
}

nlohmann::json constraint_to_json(const ConstraintSet& set)
{
    if (set.is_ball())
        return {{"kind", "norm_ball"}, {"radius", set.ball().radius}, {"space", set.spec()}};
    const Vector& c = set.simplex().scales();
    return {{"kind", "scaled_simplex"}, {"c", std::vector<double>(c.begin(), c.end())}, {"k", set.simplex().level()}};
}

} // namespace olo
