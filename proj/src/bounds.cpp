#include "olo/bounds.hpp"

#include <cmath>

namespace olo {

double TraceStats::alignment_sq_sum(const Vector& u) const
{
    if (u.size() != d)
        throw ArgumentError("alignment: comparator dimension mismatch");
    return std::max(0.0, u.dot(grad_outer_sum * u));
}

TraceStats make_trace_stats(Index d, double eps)
{
    if (d < 1)
        throw ArgumentError("trace stats: dimension must be positive");
    TraceStats stats;
    stats.d = d;
    stats.eps = eps;
    stats.grad_sum = Vector::Zero(d);
    stats.grad_outer_sum = Matrix::Zero(d, d);
    return stats;
}

void accumulate(TraceStats& stats, const Vector& g, const NormSpec& spec)
{
    if (g.size() != stats.d)
        throw ArgumentError("trace stats: gradient dimension mismatch");
    const double size = dual_norm(g, spec);
    stats.T += 1;
    stats.grad_dual_norms_sq_sum += size * size;
    stats.grad_sum += g;
    stats.grad_outer_sum.selfadjointView<Eigen::Lower>().rankUpdate(g);
    stats.grad_outer_sum.triangularView<Eigen::StrictlyUpper>() = stats.grad_outer_sum.transpose();
}

TraceStats collect_stats(const std::vector<Vector>& gradients, const NormSpec& spec, double eps)
{
    TraceStats stats = make_trace_stats(spec.dim(), eps);
    for (const auto& g : gradients)
        accumulate(stats, g, spec);
    return stats;
}

double softplus(double x)
{
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double bound_banach_regret(double n, double S, double Q, Index d, double eps)
{
    if (!(eps > 0.0))
        throw DomainError("regret bound: eps must be positive");
    if (n < 0.0 || S < 0.0 || Q < 0.0)
        throw DomainError("regret bound: negative statistic");
    if (n == 0.0)
        return eps;
    const double dd = static_cast<double>(d);
    const double log_growth = std::log1p(4.0 * S);
    const double first = dd * n / 2.0 - 8.0 * n + 8.0 * n * (std::log(8.0 * n) + 4.5 * dd * log_growth - std::log(eps));
    const double log_inner = std::log(5.0) + 2.0 * std::log(n) - 2.0 * std::log(eps) +
                             (9.0 * dd + 1.0) * std::log(8.0 * S + 2.0);
    const double second = 2.0 * std::sqrt(Q * softplus(log_inner));
    return eps + std::max(first, second);
}

double bound_banach_regret(const TraceStats& stats, const Vector& w_comp, const NormSpec& spec)
{
    return bound_banach_regret(norm(w_comp, spec), stats.grad_dual_norms_sq_sum, stats.alignment_sq_sum(w_comp),
                               stats.d, stats.eps);
}

double bound_ons_logloss(Index d, double grad_sq_sum)
{
    if (grad_sq_sum < 0.0)
        throw DomainError("log-loss bound: negative gradient sum");
    return static_cast<double>(d) * (1.0 / 17.0 + 4.5 * std::log1p(4.0 * grad_sq_sum));
}

double log_bound_wealth_lower(const TraceStats& stats, const Vector& u)
{
    if (!(stats.eps > 0.0))
        throw DomainError("wealth bound: eps must be positive");
    const double drift = stats.grad_sum.dot(u);
    const double denom = stats.alignment_sq_sum(u) + std::abs(drift);
    const double gain = denom > 0.0 ? 0.25 * drift * drift / denom : 0.0;
    return std::log(stats.eps) + gain - bound_ons_logloss(stats.d, stats.grad_dual_norms_sq_sum);
}

double bound_wealth_lower(const TraceStats& stats, const Vector& u)
{
    return std::exp(log_bound_wealth_lower(stats, u));
}

FactorCheck bound_constrained_factor(const std::vector<ConstrainedRecord>& records, const Vector& comparator)
{
    FactorCheck out;
    for (std::size_t t = 0; t < records.size(); ++t) {
        const auto& r = records[t];
        if (r.z.size() == 0 || r.g_tilde.size() == 0)
            throw ArgumentError("factor check: round " + std::to_string(t + 1) + " has no child record");
        out.lhs += r.g.dot(r.w - comparator);
        out.rhs += 2.0 * r.g_tilde.dot(r.z - comparator);
    }
    return out;
}

} // namespace olo
