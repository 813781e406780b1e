#pragma once

#include <cstdint>

#include "olo/adversary.hpp"
#include "olo/bounds.hpp"
#include "olo/recipe.hpp"
#include "olo/trace.hpp"

namespace olo {

struct ExperimentConfig
{
    nlohmann::json algo_recipe;
    AdversarySpec adversary;
    Index T = 1;
    std::uint64_t seed = 0;
    double lipschitz = 1.0;
    NormSpec space = NormSpec::euclidean(1);
    double eps = 1.0;

    void validate() const;
    RecipeContext context() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

/// Plays T rounds. Raw adversary gradients are divided by the lipschitz
/// constant before reaching the learner; both are recorded. A learner
/// precondition failure is rethrown with the round index.
RunTrace run(const ExperimentConfig& config);
/// Same loop on a caller-supplied learner.
RunTrace run(const ExperimentConfig& config, Learner& learner);

/// Losses of a trace in learner units (raw losses divided by L).
LossModel trace_loss_model(const RunTrace& trace);

/// sum_t l_t(w_t) - l_t(u) in learner units.
double regret(const RunTrace& trace, const Vector& u);

struct Comparison
{
    Vector comparator;
    double regret = 0.0;
};

struct ComparatorFamily
{
    enum class Kind
    {
        grid_1d,
        unit_ball_linear,
        simplex_vertices,
        sc_quadratic_closed_form,
    };
    Kind kind = Kind::unit_ball_linear;
    double lo = -10.0, hi = 10.0, step = 0.1;  // grid_1d
    double radius = 1.0;                       // unit_ball_linear

    static ComparatorFamily grid_1d(double lo, double hi, double step);
    static ComparatorFamily unit_ball_linear(double radius = 1.0);
    static ComparatorFamily simplex_vertices();
    static ComparatorFamily sc_quadratic_closed_form();
};

/// Primal vector of norm one attaining <s, u> = ||s||_*; zero when s = 0.
Vector dual_attaining_direction(const Vector& s, const NormSpec& spec);

/// Points {lo, lo + step, ..., hi}, built from integer multiples of step.
std::vector<double> grid_points(double lo, double hi, double step);

/// The family member with the largest regret (the best fixed point in hindsight).
Comparison hindsight_comparator(const RunTrace& trace, const ComparatorFamily& family);

/// Regret against each vertex e_i.
Vector vertex_regrets(const RunTrace& trace);

/// Theorem checks: "thm8", "wealth", "logloss", "factor2". Comparator sets:
/// "grid" (1-D grid {0, +-0.1, ..., +-10}), "ball" (radii 0.1, 1, 10 along
/// the hindsight direction and the coordinate axes), "vertices".
/// The report carries "ok": false when any inequality fails.
nlohmann::json check_bounds(const RunTrace& trace, const std::string& theorem, const std::string& comparators);

/// Log loss sum -ln(1 - <g_t, v>) of a constant betting fraction.
double log_loss(const std::vector<Vector>& gradients, const Vector& v);
/// Betting fractions v_t = w_t / Wealth_{t-1} recovered from a trace.
std::vector<Vector> betting_fractions(const RunTrace& trace);

} // namespace olo
