#pragma once

namespace olo {

/// Process-wide numeric knobs. Read by every module; defaults match the
/// documented contracts.
struct NumericSettings
{
    double tolerance = 1e-9;              // generic absolute tolerance
    double gradient_slack = 1e-12;        // allowed excess over a gradient bound
    int projection_max_iterations = 200;  // generalized projection solver cap
    double bisection_tolerance = 1e-10;   // | ||y|| - radius | stop rule
    double descent_improvement = 1e-12;   // projected-gradient stop rule
    int recondition_interval = 512;       // full re-inversion period of A^{-1}
    double inverse_residual_limit = 1e-6; // max |A A^{-1} - I| tolerated
    double min_denominator = 0.25;        // floor for 1 - <g, v>
    double simplex_guard = 1e-12;         // clamp slack in the greedy projection
};

NumericSettings& numeric_settings();

} // namespace olo
