#include "olo/recipe.hpp"

#include <filesystem>
#include <fstream>

#include "olo/baselines.hpp"
#include "olo/betting.hpp"
#include "olo/experts.hpp"
#include "olo/reductions.hpp"

namespace olo {

namespace {

Vector vector_field(const nlohmann::json& j, const char* key)
{
    const auto values = j.at(key).get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

NormSpec space_of(const nlohmann::json& recipe, const RecipeContext& context)
{
    if (recipe.contains("space"))
        return recipe.at("space").get<NormSpec>();
    return context.space;
}

ConstraintSet constraint_of(const nlohmann::json& recipe, const NormSpec& space)
{
    if (!recipe.contains("constraint"))
        return ConstraintSet::norm_ball(1.0, space);
    return constraint_from_json(recipe.at("constraint"), space);
}

RecipeContext with_space(const RecipeContext& context, const NormSpec& space)
{
    RecipeContext out = context;
    out.space = space;
    return out;
}

nlohmann::json direction_for(const NormSpec& space)
{
    if (space.kind() == NormKind::euclidean)
        return {{"algo", "ball-ogd"}};
    return {{"algo", "ball-ftrl"}};
}

} // namespace

LearnerPtr build_learner(const nlohmann::json& recipe, const RecipeContext& context)
{
    const std::string algo = recipe.at("algo").get<std::string>();
    const double eps = recipe.value("eps", context.eps);
    const NormSpec space = space_of(recipe, context);

    if (algo == "coin1d")
        return std::make_unique<CoinBetting1D>(eps);
    if (algo == "coin")
        return std::make_unique<CoinBetting>(space, eps);
    if (algo == "ons") {
        OnsConfig config;
        config.beta = recipe.value("beta", config.beta);
        config.tau = recipe.value("tau", config.tau);
        config.radius = recipe.value("radius", config.radius);
        return std::make_unique<OnsLearner>(space, config);
    }
    if (algo == "ball-ogd")
        return std::make_unique<BallOgd>(space);
    if (algo == "ball-ftrl")
        return std::make_unique<BallFtrl>(space);
    if (algo == "ogd")
        return std::make_unique<ProjectedGradient>(space, recipe.value("eta", 1.0), recipe.value("radius", 1.0));
    if (algo == "dimfree") {
        const RecipeContext one_d = with_space(context, NormSpec::euclidean(1));
        auto magnitude = build_learner(recipe.value("magnitude", nlohmann::json{{"algo", "coin1d"}}), one_d);
        auto direction = build_learner(recipe.value("direction", direction_for(space)), with_space(context, space));
        return std::make_unique<DimensionFree>(std::move(magnitude), std::move(direction), space);
    }
    if (algo == "constrained") {
        ConstraintSet constraint = constraint_of(recipe, space);
        auto inner = build_learner(recipe.at("inner"), with_space(context, constraint.spec()));
        return std::make_unique<Constrained>(std::move(inner), std::move(constraint), recipe.value("lipschitz", 1.0));
    }
    if (algo == "curvature") {
        ConstraintSet constraint = constraint_of(recipe, space);
        auto base = build_learner(recipe.at("base"), with_space(context, constraint.spec()));
        std::optional<Vector> start;
        if (recipe.contains("start"))
            start = vector_field(recipe, "start");
        return std::make_unique<Curvature>(std::move(base), std::move(constraint), start,
                                           recipe.value("base_gradient_scale", 2.0));
    }
    if (algo == "coordwise") {
        const Index n = space.dim();
        const Vector pi = recipe.contains("pi") ? vector_field(recipe, "pi")
                                                : Vector::Constant(n, 1.0 / static_cast<double>(n));
        return std::make_unique<CoordinateWise>(CoordinateWise::coin_betting(pi, eps));
    }
    if (algo == "multiscale") {
        MultiScaleConfig config;
        if (recipe.contains("c"))
            config.c = vector_field(recipe, "c");
        else if (context.scales)
            config.c = *context.scales;
        else
            throw ArgumentError("multiscale recipe needs expert scales 'c'");
        const Index n = config.c.size();
        config.pi = recipe.contains("pi") ? vector_field(recipe, "pi")
                                          : Vector::Constant(n, 1.0 / static_cast<double>(n));
        config.eps = eps;
        return std::make_unique<MultiScale>(std::move(config));
    }
    throw ArgumentError("unknown algo '" + algo + "'");
}

std::vector<std::string> preset_names()
{
    return {"coin1d", "coin", "ons", "ball-ogd", "ball-ftrl", "ogd", "dimfree", "constrained-ball", "curvature",
            "multiscale"};
}

nlohmann::json preset_recipe(const std::string& name, const RecipeContext& context)
{
    const nlohmann::json eps = context.eps;
    if (name == "coin1d" || name == "coin")
        return {{"algo", name}, {"eps", eps}};
    if (name == "ons" || name == "ball-ogd" || name == "ball-ftrl" || name == "ogd")
        return {{"algo", name}};
    if (name == "dimfree")
        return {{"algo", "dimfree"},
                {"magnitude", {{"algo", "coin1d"}, {"eps", eps}}},
                {"direction", direction_for(context.space)}};
    if (name == "constrained-ball")
        return {{"algo", "constrained"},
                {"inner", {{"algo", "coin"}, {"eps", eps}}},
                {"constraint", {{"kind", "norm_ball"}, {"radius", 1.0}}}};
    if (name == "curvature")
        return {{"algo", "curvature"},
                {"base", {{"algo", "coin"}, {"eps", eps}}},
                {"constraint", {{"kind", "norm_ball"}, {"radius", 1.0}}}};
    if (name == "multiscale") {
        nlohmann::json out = {{"algo", "multiscale"}, {"eps", eps}};
        if (context.scales)
            out["c"] = std::vector<double>(context.scales->begin(), context.scales->end());
        return out;
    }
    throw ArgumentError("unknown preset '" + name + "'");
}

nlohmann::json resolve_recipe(const std::string& text, const RecipeContext& context)
{
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), text) != names.end())
        return preset_recipe(text, context);
    if (!text.empty() && text.front() == '{')
        return nlohmann::json::parse(text);
    if (std::filesystem::exists(text)) {
        std::ifstream in(text);
        return nlohmann::json::parse(in);
    }
    throw ArgumentError("'" + text + "' is neither a preset, inline JSON, nor a readable file");
}

} // namespace olo
