#include "olo/simplex.hpp"

#include <algorithm>
#include <numeric>

#include "olo/settings.hpp"

namespace olo {

ScaledSimplex::ScaledSimplex(Vector scales, double k)
    : c_(std::move(scales)), k_(k)
{
    if (c_.size() == 0)
        throw ArgumentError("scaled simplex needs at least one coordinate");
    for (Index i = 0; i < c_.size(); ++i)
        if (!(c_[i] > 0.0) || !std::isfinite(c_[i]))
            throw ArgumentError("scaled simplex scales must be positive");
    if (!(k_ > 0.0) || !std::isfinite(k_))
        throw ArgumentError("scaled simplex level k must be positive");
    order_.resize(static_cast<std::size_t>(c_.size()));
    std::iota(order_.begin(), order_.end(), Index{0});
    std::stable_sort(order_.begin(), order_.end(), [this](Index a, Index b) { return c_[a] > c_[b]; });
}

bool ScaledSimplex::contains(const Vector& x) const
{
    detail::check_dim(x, NormSpec::l1(dim()));
    const double guard = numeric_settings().simplex_guard;
    if (x.minCoeff() < -guard)
        return false;
    return std::abs(x.cwiseQuotient(c_).sum() - k_) <= guard * std::max(1.0, k_);
}

ScaledSimplex::Pass ScaledSimplex::greedy(const Vector& x) const
{
    detail::check_dim(x, NormSpec::l1(dim()));
    const Index n = dim();
    Pass pass;
    pass.y = Vector::Zero(n);
    pass.budget = Vector::Zero(n);
    pass.branch.assign(static_cast<std::size_t>(n), Branch::last);

    double budget = k_;
    for (Index j = 0; j < n; ++j) {
        const Index i = order_[static_cast<std::size_t>(j)];
        const double cap = budget * c_[i];
        pass.budget[i] = budget;
        double y = 0.0;
        Branch branch = Branch::last;
        if (j == n - 1) {
            y = cap;
        } else if (x[i] <= 0.0) {
            y = 0.0;
            branch = Branch::zero;
        } else if (x[i] > cap) {
            y = cap;
            branch = Branch::capped;
        } else {
            y = x[i];
            branch = Branch::interior;
        }
        pass.y[i] = y;
        pass.branch[static_cast<std::size_t>(i)] = branch;
        if (pass.saturated < 0 && y == cap)
            pass.saturated = j;
        budget = std::max(budget - y / c_[i], 0.0);
    }
    return pass;
}

Vector ScaledSimplex::project(const Vector& x) const
{
    if (contains(x))
        return x;
    return greedy(x).y;
}

double ScaledSimplex::distance(const Vector& x) const
{
    if (contains(x))
        return 0.0;
    return (x - greedy(x).y).lpNorm<1>();
}

Vector ScaledSimplex::distance_subgradient(const Vector& x) const
{
    const Pass pass = greedy(x);
    const Index m = order_[static_cast<std::size_t>(pass.saturated)];
    const double cap_m = pass.budget[m] * c_[m];
    // Interior coordinates move mass against coordinate M; their slope is the
    // exchange rate c_M / c_i, signed by which side of its cap M sits on.
    const double interior_sign = (x[m] == cap_m) ? 1.0 : (x[m] > pass.y[m] ? 1.0 : -1.0);

    Vector g(dim());
    for (Index i = 0; i < dim(); ++i) {
        const double cap = pass.budget[i] * c_[i];
        if (x[i] <= 0.0)
            g[i] = -1.0;
        else if (x[i] > cap)
            g[i] = 1.0;
        else
            g[i] = interior_sign * c_[m] / c_[i];
    }
    return g;
}

Vector simplex_project(const Vector& x, const Vector& c, double k)
{
    if (x.size() != c.size())
        throw ArgumentError("simplex_project: x and c differ in length");
    return ScaledSimplex(c, k).project(x);
}

Vector simplex_distance_subgradient(const Vector& x, const Vector& c, double k)
{
    if (x.size() != c.size())
        throw ArgumentError("simplex_distance_subgradient: x and c differ in length");
    return ScaledSimplex(c, k).distance_subgradient(x);
}

} // namespace olo
