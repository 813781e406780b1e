#pragma once

#include <vector>

#include "olo/spaces.hpp"

namespace olo {

/// W_k = {y : y_i >= 0, sum_i y_i / c_i = k}, measured in the l1 norm.
///
/// Projection under l1 is set-valued in general; project() returns the
/// canonical greedy selection: visit coordinates by decreasing scale c_i
/// (ties by index), keep x_i when it fits in the remaining budget k_i c_i,
/// clamp to [0, k_i c_i] otherwise, and give the last coordinate whatever
/// budget is left. The scale order is computed once at construction.
class ScaledSimplex
{
public:
    ScaledSimplex(Vector scales, double k = 1.0);

    Index dim() const { return c_.size(); }
    const Vector& scales() const { return c_; }
    double level() const { return k_; }
    /// Coordinates sorted by decreasing scale.
    const std::vector<Index>& order() const { return order_; }

    bool contains(const Vector& x) const;
    Vector project(const Vector& x) const;
    /// ||x - project(x)||_1, zero for members.
    double distance(const Vector& x) const;
    /// Closed-form subgradient of the l1 distance built from the greedy pass.
    /// Valid everywhere, though callers use 0 for members of W.
    Vector distance_subgradient(const Vector& x) const;

private:
    enum class Branch
    {
        zero,     // x_i <= 0
        capped,   // x_i > k_i c_i
        interior, // x_i in (0, k_i c_i]
        last,     // final coordinate absorbs the remaining budget
    };

    struct Pass
    {
        Vector y;
        Vector budget; // k_i per coordinate (original indexing)
        std::vector<Branch> branch;
        Index saturated = -1; // first coordinate (in scale order) with y = k c
    };

    Pass greedy(const Vector& x) const;

    Vector c_;
    double k_;
    std::vector<Index> order_;
};

Vector simplex_project(const Vector& x, const Vector& c, double k);
Vector simplex_distance_subgradient(const Vector& x, const Vector& c, double k);

} // namespace olo
