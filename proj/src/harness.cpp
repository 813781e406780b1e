#include "olo/harness.hpp"

#include <cmath>
#include <limits>

#include "olo/constraint.hpp"

namespace olo {

void ExperimentConfig::validate() const
{
    if (T < 1)
        throw ArgumentError("experiment: T must be at least 1");
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz))
        throw ArgumentError("experiment: lipschitz must be positive");
    if (!(eps > 0.0))
        throw ArgumentError("experiment: eps must be positive");
    if (!algo_recipe.is_object() || !algo_recipe.contains("algo"))
        throw ArgumentError("experiment: recipe must be an object with an 'algo' field");
}

RecipeContext ExperimentConfig::context() const
{
    RecipeContext ctx;
    ctx.space = space;
    ctx.eps = eps;
    ctx.scales = adversary_scales(adversary);
    return ctx;
}

nlohmann::json ExperimentConfig::to_json() const
{
    return {
        {"algo", algo_recipe}, {"adversary", adversary.text()}, {"T", T},     {"seed", seed},
        {"lipschitz", lipschitz}, {"space", space},               {"eps", eps},
    };
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j)
{
    ExperimentConfig config;
    config.algo_recipe = j.at("algo");
    config.adversary = AdversarySpec::parse(j.at("adversary").get<std::string>());
    config.T = j.at("T").get<Index>();
    config.seed = j.at("seed").get<std::uint64_t>();
    config.lipschitz = j.value("lipschitz", 1.0);
    config.space = j.at("space").get<NormSpec>();
    config.eps = j.value("eps", 1.0);
    return config;
}

RunTrace run(const ExperimentConfig& config)
{
    config.validate();
    auto learner = build_learner(config.algo_recipe, config.context());
    return run(config, *learner);
}

RunTrace run(const ExperimentConfig& config, Learner& learner)
{
    config.validate();
    if (learner.dim() != config.space.dim())
        throw ArgumentError("experiment: learner dimension differs from the space");
    auto adversary = make_adversary(config.adversary, config.space, config.lipschitz, config.seed);

    RunTrace trace;
    trace.config = config.to_json();
    trace.prng = kPrngName;
    trace.rounds.reserve(static_cast<std::size_t>(config.T));
    for (Index t = 1; t <= config.T; ++t) {
        RoundRecord r;
        r.t = t;
        r.w = learner.predict();
        try {
            r.raw_g = adversary->gradient(t, r.w);
            r.g = r.raw_g / config.lipschitz;
            learner.update(r.g);
        } catch (const PreconditionError& e) {
            throw PreconditionError("round " + std::to_string(t) + ": " + e.what());
        }
        r.wealth = learner.wealth();
        if (const auto step = learner.last_step()) {
            r.z = step->inner_point;
            r.g_tilde = step->inner_gradient;
        }
        trace.rounds.push_back(std::move(r));
    }
    return trace;
}

// ---------------------------------------------------------------------------

namespace {

ExperimentConfig config_of(const RunTrace& trace)
{
    return ExperimentConfig::from_json(trace.config);
}

double recipe_eps(const ExperimentConfig& config)
{
    return config.algo_recipe.value("eps", config.eps);
}

Vector normalized(const Vector& u, const NormSpec& spec)
{
    const double length = norm(u, spec);
    return length > 0.0 ? Vector(u / length) : u;
}

nlohmann::json list(const Vector& v)
{
    return std::vector<double>(v.begin(), v.end());
}

/// Comparators for the "ball" and "vertices" families.
std::vector<Vector> probe_set(const RunTrace& trace, const NormSpec& spec, const std::string& family)
{
    const Index d = trace.dim();
    std::vector<Vector> out;
    if (family == "grid") {
        if (d != 1)
            throw ArgumentError("grid comparators need a one-dimensional trace");
        for (double x : grid_points(-10.0, 10.0, 0.1))
            out.push_back(Vector::Constant(1, x));
        return out;
    }
    if (family == "vertices") {
        for (Index i = 0; i < d; ++i)
            out.push_back(Vector::Unit(d, i));
        return out;
    }
    if (family == "ball") {
        Vector G = Vector::Zero(d);
        for (const auto& r : trace.rounds)
            G += r.g;
        std::vector<Vector> directions;
        directions.push_back(-dual_attaining_direction(G, spec));
        for (Index i = 0; i < std::min<Index>(d, 10); ++i) {
            directions.push_back(normalized(Vector::Unit(d, i), spec));
            directions.push_back(-normalized(Vector::Unit(d, i), spec));
        }
        out.push_back(Vector::Zero(d));
        for (double radius : {0.1, 1.0, 10.0})
            for (const auto& dir : directions)
                if (dir.squaredNorm() > 0.0)
                    out.push_back(radius * dir);
        return out;
    }
    throw ArgumentError("unknown comparator set '" + family + "'");
}

nlohmann::json finish(const std::string& theorem, nlohmann::json results)
{
    bool ok = true;
    for (const auto& r : results)
        ok = ok && r.at("ok").get<bool>();
    return {{"theorem", theorem}, {"results", std::move(results)}, {"ok", ok}};
}

nlohmann::json check_thm8(const RunTrace& trace, const std::string& comparators)
{
    const ExperimentConfig config = config_of(trace);
    const TraceStats stats = collect_stats(trace.gradients(), config.space, recipe_eps(config));
    nlohmann::json results = nlohmann::json::array();
    for (const auto& u : probe_set(trace, config.space, comparators)) {
        const double r = regret(trace, u);
        const double bound = bound_banach_regret(stats, u, config.space);
        results.push_back({{"theorem", "thm8"}, {"comparator", list(u)}, {"regret", r}, {"bound", bound},
                           {"ok", r <= bound}});
    }
    return finish("thm8", std::move(results));
}

nlohmann::json check_wealth(const RunTrace& trace)
{
    const ExperimentConfig config = config_of(trace);
    if (trace.rounds.empty() || !trace.rounds.back().wealth)
        throw ArgumentError("wealth check needs a trace with a wealth column");
    const TraceStats stats = collect_stats(trace.gradients(), config.space, recipe_eps(config));
    const Index d = trace.dim();
    std::vector<Vector> directions;
    Vector best = dual_attaining_direction(stats.grad_sum, config.space);
    if (best.squaredNorm() == 0.0)
        best = normalized(Vector::Unit(d, 0), config.space);
    directions.push_back(best);
    if (d > 1)
        for (Index i = 0; i < std::min<Index>(d, 10); ++i)
            directions.push_back(normalized(Vector::Unit(d, i), config.space));
    const double wealth = *trace.rounds.back().wealth;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& u : directions) {
        const double log_bound = log_bound_wealth_lower(stats, u);
        const bool ok = wealth > 0.0 && std::log(wealth) >= log_bound;
        results.push_back({{"theorem", "wealth"}, {"comparator", list(u)}, {"wealth", wealth},
                           {"bound", std::exp(log_bound)}, {"log_bound", log_bound}, {"ok", ok}});
    }
    return finish("wealth", std::move(results));
}

nlohmann::json check_logloss(const RunTrace& trace)
{
    const ExperimentConfig config = config_of(trace);
    const Index d = trace.dim();
    if (d > 2)
        throw UnsupportedError("logloss check grids only one or two dimensions");
    const auto gradients = trace.gradients();
    const auto fractions = betting_fractions(trace);
    double learner_loss = 0.0;
    for (std::size_t t = 0; t < gradients.size(); ++t)
        learner_loss += -std::log1p(-gradients[t].dot(fractions[t]));

    double best = std::numeric_limits<double>::infinity();
    Vector best_v = Vector::Zero(d);
    const double step = d == 1 ? 1e-3 : 2e-2;
    const auto axis = grid_points(-0.5, 0.5, step);
    const auto consider = [&](const Vector& v) {
        if (norm(v, config.space) > 0.5)
            return;
        const double loss = log_loss(gradients, v);
        if (loss < best) {
            best = loss;
            best_v = v;
        }
    };
    for (double a : axis) {
        if (d == 1) {
            consider(Vector::Constant(1, a));
            continue;
        }
        for (double b : axis)
            consider((Vector(2) << a, b).finished());
    }
    double S = 0.0;
    for (const auto& g : gradients)
        S += std::pow(dual_norm(g, config.space), 2);
    const double gap = learner_loss - best;
    const double bound = bound_ons_logloss(d, S);
    const double slack = 1e-2;
    nlohmann::json results = nlohmann::json::array();
    results.push_back({{"theorem", "logloss"}, {"comparator", list(best_v)}, {"regret", gap}, {"bound", bound},
                       {"slack", slack}, {"ok", gap <= bound + slack}});
    return finish("logloss", std::move(results));
}

nlohmann::json check_factor2(const RunTrace& trace)
{
    const ExperimentConfig config = config_of(trace);
    if (!trace.has_child_records())
        throw ArgumentError("factor2 check needs child records (z, g~) in the trace");
    const auto& recipe = config.algo_recipe;
    const std::string algo = recipe.at("algo").get<std::string>();

    std::optional<ConstraintSet> constraint;
    Vector scale = Vector::Ones(trace.dim());
    if (algo == "constrained") {
        const NormSpec space = recipe.contains("space") ? recipe.at("space").get<NormSpec>() : config.space;
        constraint = recipe.contains("constraint") ? constraint_from_json(recipe.at("constraint"), space)
                                                   : ConstraintSet::norm_ball(1.0, space);
    } else if (algo == "multiscale") {
        const auto c = adversary_scales(config.adversary);
        if (!recipe.contains("c") && !c)
            throw ArgumentError("factor2: multiscale trace without scales");
        if (recipe.contains("c")) {
            const auto v = recipe.at("c").get<std::vector<double>>();
            scale = Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
        } else {
            scale = *c;
        }
        constraint = ConstraintSet::scaled_simplex(scale, 1.0);
    } else {
        throw ArgumentError("factor2 applies to constrained and multiscale learners, not '" + algo + "'");
    }

    std::vector<ConstrainedRecord> records;
    double excess = -std::numeric_limits<double>::infinity();
    Vector G = Vector::Zero(trace.dim());
    for (const auto& r : trace.rounds) {
        const Vector g = r.g.cwiseQuotient(scale);
        records.push_back({r.w.cwiseProduct(scale), g, r.z, r.g_tilde});
        G += g;
        excess = std::max(excess, dual_norm(r.g_tilde, constraint->spec()) - dual_norm(g, constraint->spec()));
    }

    std::vector<Vector> probes;
    const Index d = trace.dim();
    if (constraint->is_ball()) {
        const double radius = constraint->ball().radius;
        const NormSpec& spec = constraint->spec();
        probes.push_back(Vector::Zero(d));
        probes.push_back(-radius * dual_attaining_direction(G, spec));
        for (Index i = 0; i < std::min<Index>(d, 10); ++i)
            for (double sign : {1.0, -1.0})
                for (double frac : {0.5, 1.0})
                    probes.push_back(sign * frac * radius * normalized(Vector::Unit(d, i), spec));
    } else {
        const auto& simplex = constraint->simplex();
        Vector centroid = Vector::Zero(d);
        for (Index i = 0; i < d; ++i) {
            const Vector vertex = simplex.level() * simplex.scales()[i] * Vector::Unit(d, i);
            probes.push_back(vertex);
            centroid += vertex / static_cast<double>(d);
        }
        probes.push_back(centroid);
    }

    const double tol = 1e-9;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& u : probes) {
        const FactorCheck check = bound_constrained_factor(records, u);
        results.push_back({{"theorem", "factor2"}, {"comparator", list(u.cwiseQuotient(scale))},
                           {"regret", check.lhs}, {"bound", check.rhs}, {"ok", check.lhs <= check.rhs + tol}});
    }
    results.push_back({{"theorem", "factor2"}, {"surrogate_norm_excess", excess}, {"ok", excess <= tol}});
    return finish("factor2", std::move(results));
}

} // namespace

LossModel trace_loss_model(const RunTrace& trace)
{
    const ExperimentConfig config = config_of(trace);
    LossModel model = make_adversary(config.adversary, config.space, config.lipschitz, config.seed)->loss_model();
    model.mu /= config.lipschitz;
    return model;
}

double regret(const RunTrace& trace, const Vector& u)
{
    const LossModel model = trace_loss_model(trace);
    double total = 0.0;
    if (model.kind == LossModel::Kind::linear) {
        for (const auto& r : trace.rounds)
            total += r.g.dot(r.w - u);
        return total;
    }
    const double comparator_loss = 0.5 * model.mu * (u - model.w_star).squaredNorm();
    for (const auto& r : trace.rounds)
        total += 0.5 * model.mu * (r.w - model.w_star).squaredNorm() - comparator_loss;
    return total;
}

ComparatorFamily ComparatorFamily::grid_1d(double lo, double hi, double step)
{
    ComparatorFamily f;
    f.kind = Kind::grid_1d;
    f.lo = lo;
    f.hi = hi;
    f.step = step;
    return f;
}

ComparatorFamily ComparatorFamily::unit_ball_linear(double radius)
{
    ComparatorFamily f;
    f.kind = Kind::unit_ball_linear;
    f.radius = radius;
    return f;
}

ComparatorFamily ComparatorFamily::simplex_vertices()
{
    ComparatorFamily f;
    f.kind = Kind::simplex_vertices;
    return f;
}

ComparatorFamily ComparatorFamily::sc_quadratic_closed_form()
{
    ComparatorFamily f;
    f.kind = Kind::sc_quadratic_closed_form;
    return f;
}

Vector dual_attaining_direction(const Vector& s, const NormSpec& spec)
{
    detail::check_dim(s, spec);
    const Index d = s.size();
    if (s.cwiseAbs().maxCoeff() == 0.0)
        return Vector::Zero(d);
    switch (spec.kind()) {
    case NormKind::euclidean:
        return s / s.norm();
    case NormKind::p_norm: {
        const Vector t = s / dual_norm(s, spec);
        Vector u(d);
        for (Index i = 0; i < d; ++i)
            u[i] = std::copysign(std::pow(std::abs(t[i]), spec.q() - 1.0), t[i]);
        return u;
    }
    case NormKind::l1: {
        Index k = 0;
        s.cwiseAbs().maxCoeff(&k);
        return std::copysign(1.0, s[k]) * Vector::Unit(d, k);
    }
    case NormKind::weighted_linf: {
        Vector u(d);
        for (Index i = 0; i < d; ++i)
            u[i] = s[i] == 0.0 ? 0.0 : std::copysign(spec.scales()[i], s[i]);
        return u;
    }
    }
    throw UnsupportedError("dual_attaining_direction: unknown norm");
}

std::vector<double> grid_points(double lo, double hi, double step)
{
    if (!(step > 0.0) || hi < lo)
        throw ArgumentError("grid: need step > 0 and lo <= hi");
    const auto first = static_cast<long long>(std::ceil(lo / step - 1e-9));
    const auto last = static_cast<long long>(std::floor(hi / step + 1e-9));
    std::vector<double> out;
    for (long long i = first; i <= last; ++i)
        out.push_back(static_cast<double>(i) * step);
    return out;
}

Comparison hindsight_comparator(const RunTrace& trace, const ComparatorFamily& family)
{
    const ExperimentConfig config = config_of(trace);
    const Index d = trace.dim();
    Comparison best;
    best.regret = -std::numeric_limits<double>::infinity();
    const auto consider = [&](const Vector& u) {
        const double r = regret(trace, u);
        if (r > best.regret) {
            best.regret = r;
            best.comparator = u;
        }
    };
    switch (family.kind) {
    case ComparatorFamily::Kind::grid_1d:
        if (d != 1)
            throw ArgumentError("grid_1d comparator needs a one-dimensional trace");
        for (double x : grid_points(family.lo, family.hi, family.step))
            consider(Vector::Constant(1, x));
        break;
    case ComparatorFamily::Kind::unit_ball_linear: {
        Vector G = Vector::Zero(d);
        for (const auto& r : trace.rounds)
            G += r.g;
        consider(-family.radius * dual_attaining_direction(G, config.space));
        break;
    }
    case ComparatorFamily::Kind::simplex_vertices:
        for (Index i = 0; i < d; ++i)
            consider(Vector::Unit(d, i));
        break;
    case ComparatorFamily::Kind::sc_quadratic_closed_form: {
        const LossModel model = trace_loss_model(trace);
        if (model.kind != LossModel::Kind::quadratic)
            throw ArgumentError("sc_quadratic_closed_form needs a quadratic-loss trace");
        consider(model.w_star);
        break;
    }
    }
    return best;
}

Vector vertex_regrets(const RunTrace& trace)
{
    const Index d = trace.dim();
    Vector out(d);
    for (Index i = 0; i < d; ++i)
        out[i] = regret(trace, Vector::Unit(d, i));
    return out;
}

double log_loss(const std::vector<Vector>& gradients, const Vector& v)
{
    double total = 0.0;
    for (const auto& g : gradients)
        total += -std::log1p(-g.dot(v));
    return total;
}

std::vector<Vector> betting_fractions(const RunTrace& trace)
{
    const ExperimentConfig config = config_of(trace);
    double previous = recipe_eps(config);
    std::vector<Vector> out;
    out.reserve(trace.rounds.size());
    for (const auto& r : trace.rounds) {
        if (!r.wealth)
            throw ArgumentError("betting fractions need a wealth column");
        out.push_back(r.w / previous);
        previous = *r.wealth;
    }
    return out;
}

nlohmann::json check_bounds(const RunTrace& trace, const std::string& theorem, const std::string& comparators)
{
    if (trace.rounds.empty())
        throw ArgumentError("cannot check an empty trace");
    if (theorem == "thm8")
        return check_thm8(trace, comparators);
    if (theorem == "wealth")
        return check_wealth(trace);
    if (theorem == "logloss")
        return check_logloss(trace);
    if (theorem == "factor2")
        return check_factor2(trace);
    throw ArgumentError("unknown theorem '" + theorem + "'");
}

} // namespace olo
