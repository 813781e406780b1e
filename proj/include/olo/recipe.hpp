#pragma once

#include <optional>

#include "olo/learner.hpp"

namespace olo {

/// Values a recipe may leave unspecified.
struct RecipeContext
{
    NormSpec space = NormSpec::euclidean(1);
    double eps = 1.0;
    std::optional<Vector> scales;  // expert scales for multiscale presets
};

/// Builds a learner tree from a JSON recipe such as
///   {"algo":"constrained",
///    "inner":{"algo":"dimfree","magnitude":{"algo":"coin1d"},"direction":{"algo":"ball-ogd"}},
///    "constraint":{"kind":"norm_ball","radius":1.0}}
LearnerPtr build_learner(const nlohmann::json& recipe, const RecipeContext& context);

/// Names accepted by preset_recipe.
std::vector<std::string> preset_names();
/// Recipe for a named preset, filled in from the context.
nlohmann::json preset_recipe(const std::string& name, const RecipeContext& context);

/// Accepts a preset name, a path to a JSON file, or inline JSON text.
nlohmann::json resolve_recipe(const std::string& text, const RecipeContext& context);

} // namespace olo
