#pragma once

#include <vector>

#include "olo/spaces.hpp"

namespace olo {

/// Gradient statistics of a finished run. Everything is recomputable from the
/// stored gradient stream.
struct TraceStats
{
    Index T = 0;
    Index d = 1;
    double eps = 1.0;
    double grad_dual_norms_sq_sum = 0.0;  // sum ||g_t||_*^2
    Vector grad_sum;                      // G = sum g_t
    Matrix grad_outer_sum;                // sum g_t g_t^T

    /// sum <g_t, u>^2, read off the outer-product sum.
    double alignment_sq_sum(const Vector& u) const;
};

TraceStats make_trace_stats(Index d, double eps);
void accumulate(TraceStats& stats, const Vector& g, const NormSpec& spec);
TraceStats collect_stats(const std::vector<Vector>& gradients, const NormSpec& spec, double eps);

/// log(1 + exp(x)) without overflow.
double softplus(double x);

/// Regret bound of coin betting in a d-dimensional Banach space:
///   eps + max{ d n/2 - 8n + 8n ln[8n (1 + 4S)^(4.5d) / eps],
///              2 sqrt(Q ln(5 n^2/eps^2 (8S + 2)^(9d+1) + 1)) }
/// with n = ||w||, S = sum ||g_t||_*^2 and Q = sum <g_t, w>^2.
/// Powers and logs are taken in the log domain.
double bound_banach_regret(const TraceStats& stats, const Vector& w_comp, const NormSpec& spec);
/// Same formula from scalar ingredients.
double bound_banach_regret(double comparator_norm, double grad_sq_sum, double alignment_sq_sum, Index d, double eps);

/// Log-loss regret of the betting ONS: d (1/17 + 4.5 ln(1 + 4S)).
double bound_ons_logloss(Index d, double grad_sq_sum);

/// Lower bound on the final wealth along a unit direction u:
///   eps exp(1/4 <G,u>^2 / (sum <g_t,u>^2 + |<G,u>|)) / exp(d (1/17 + 4.5 ln(1 + 4S)))
double bound_wealth_lower(const TraceStats& stats, const Vector& u);
double log_bound_wealth_lower(const TraceStats& stats, const Vector& u);

/// One round of a constrained run: played w_t, loss g_t, child point z_t and
/// surrogate gradient g~_t.
struct ConstrainedRecord
{
    Vector w, g, z, g_tilde;
};

struct FactorCheck
{
    double lhs = 0.0;  // sum <g_t, w_t - u>
    double rhs = 0.0;  // 2 sum <g~_t, z_t - u>
};

FactorCheck bound_constrained_factor(const std::vector<ConstrainedRecord>& records, const Vector& comparator);

} // namespace olo
