#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "olo/errors.hpp"

namespace olo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class NormKind
{
    euclidean,
    p_norm,
    l1,
    weighted_linf,
};

/// Finite-dimensional normed space R^d. The pairing between primal and dual
/// vectors is always the coordinate dot product.
class NormSpec
{
public:
    static NormSpec euclidean(Index dim);
    static NormSpec p_norm(double p, Index dim);
    static NormSpec l1(Index dim);
    static NormSpec weighted_linf(Vector scales);

    NormKind kind() const { return kind_; }
    Index dim() const { return dim_; }
    double p() const { return p_; }
    /// Conjugate exponent q with 1/p + 1/q = 1 (p_norm only).
    double q() const { return p_ / (p_ - 1.0); }
    const Vector& scales() const { return scales_; }

    std::string describe() const;

    friend bool operator==(const NormSpec& a, const NormSpec& b)
    {
        return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.p_ == b.p_ && a.scales_ == b.scales_;
    }

private:
    NormSpec(NormKind kind, Index dim, double p, Vector scales)
        : kind_(kind), dim_(dim), p_(p), scales_(std::move(scales))
    {
    }

    NormKind kind_ = NormKind::euclidean;
    Index dim_ = 1;
    double p_ = 2.0;
    Vector scales_;
};

void to_json(nlohmann::json& j, const NormSpec& spec);
NormSpec norm_spec_from_json(const nlohmann::json& j);

/// Parses the CLI form: "euclidean", "l1", "p:<p>", "winf:<c1>,<c2>,...".
NormSpec parse_space(const std::string& text, Index dim);

namespace detail {

template <typename Derived>
void check_dim(const Eigen::MatrixBase<Derived>& x, const NormSpec& spec)
{
    if (x.size() != spec.dim())
        throw ArgumentError("dimension mismatch: vector has " + std::to_string(x.size()) +
                            " entries, space has dim " + std::to_string(spec.dim()));
}

/// (sum |x_i|^p)^(1/p), computed relative to max |x_i| to stay in range.
template <typename Derived>
typename Derived::Scalar lp_norm(const Eigen::MatrixBase<Derived>& x, double p)
{
    using Scalar = typename Derived::Scalar;
    const Scalar peak = x.cwiseAbs().maxCoeff();
    if (peak == Scalar(0))
        return Scalar(0);
    Scalar acc(0);
    for (Index i = 0; i < x.size(); ++i)
        acc += std::pow(std::abs(x[i]) / peak, p);
    return peak * std::pow(acc, Scalar(1) / p);
}

} // namespace detail

template <typename DerivedG, typename DerivedX>
typename DerivedG::Scalar pairing(const Eigen::MatrixBase<DerivedG>& g, const Eigen::MatrixBase<DerivedX>& x)
{
    return g.dot(x);
}

template <typename Derived>
typename Derived::Scalar norm(const Eigen::MatrixBase<Derived>& x, const NormSpec& spec)
{
    detail::check_dim(x, spec);
    if (x.size() == 0)
        return 0;
    switch (spec.kind()) {
    case NormKind::euclidean:
        return x.norm();
    case NormKind::p_norm:
        return detail::lp_norm(x, spec.p());
    case NormKind::l1:
        return x.template lpNorm<1>();
    case NormKind::weighted_linf:
        return x.cwiseAbs().cwiseQuotient(spec.scales()).maxCoeff();
    }
    return 0;
}

template <typename Derived>
typename Derived::Scalar dual_norm(const Eigen::MatrixBase<Derived>& g, const NormSpec& spec)
{
    detail::check_dim(g, spec);
    if (g.size() == 0)
        return 0;
    switch (spec.kind()) {
    case NormKind::euclidean:
        return g.norm();
    case NormKind::p_norm:
        return detail::lp_norm(g, spec.q());
    case NormKind::l1:
        return g.template lpNorm<Eigen::Infinity>();
    case NormKind::weighted_linf:
        return g.cwiseAbs().dot(spec.scales());
    }
    return 0;
}

/// Unit dual vector x* with <x*, x> = ||x||. Defined for the strictly convex
/// kinds only (euclidean, p_norm), where it is unique.
template <typename Derived>
Vector dual_map(const Eigen::MatrixBase<Derived>& x, const NormSpec& spec)
{
    detail::check_dim(x, spec);
    if (spec.kind() != NormKind::euclidean && spec.kind() != NormKind::p_norm)
        throw UnsupportedError("dual_map is only defined for euclidean and p-norm spaces, got " + spec.describe());
    const double length = norm(x, spec);
    if (length == 0.0)
        throw DomainError("dual_map of the zero vector");
    if (spec.kind() == NormKind::euclidean)
        return x / length;
    const double p = spec.p();
    Vector out(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        const double r = std::abs(x[i]) / length;
        out[i] = (x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0)) * std::pow(r, p - 1.0);
    }
    return out;
}

/// A subgradient of the norm at x != 0: the dual map where it exists,
/// otherwise a canonical element of the (set-valued) subdifferential.
template <typename Derived>
Vector norm_subgradient(const Eigen::MatrixBase<Derived>& x, const NormSpec& spec)
{
    detail::check_dim(x, spec);
    switch (spec.kind()) {
    case NormKind::euclidean:
    case NormKind::p_norm:
        return dual_map(x, spec);
    case NormKind::l1: {
        Vector out = x.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
        if (out.isZero())
            throw DomainError("norm subgradient requested at the zero vector");
        return out;
    }
    case NormKind::weighted_linf: {
        Index top = 0;
        x.cwiseAbs().cwiseQuotient(spec.scales()).maxCoeff(&top);
        if (x[top] == 0.0)
            throw DomainError("norm subgradient requested at the zero vector");
        Vector out = Vector::Zero(x.size());
        out[top] = (x[top] > 0 ? 1.0 : -1.0) / spec.scales()[top];
        return out;
    }
    }
    return Vector();
}

/// lambda such that 1/2 ||.||^2 is (2, lambda)-uniformly convex.
double convexity_constant(const NormSpec& spec);

} // namespace olo

template <>
struct nlohmann::adl_serializer<olo::NormSpec>
{
    static olo::NormSpec from_json(const json& j) { return olo::norm_spec_from_json(j); }
    static void to_json(json& j, const olo::NormSpec& spec) { olo::to_json(j, spec); }
};
