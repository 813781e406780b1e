#include "olo/adversary.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "olo/learner.hpp"

namespace olo {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ stream))
{
}

double RandomStream::normal()
{
    double u = uniform();
    while (u <= 0.0)
        u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Vector parse_list(const std::string& text)
{
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size())
            throw ArgumentError("cannot parse number '" + item + "'");
        values.push_back(value);
    }
    if (values.empty())
        throw ArgumentError("empty number list");
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

AdversarySpec AdversarySpec::parse(const std::string& text)
{
    AdversarySpec spec;
    std::stringstream in(text);
    std::string part;
    std::getline(in, spec.name, ':');
    while (std::getline(in, part, ':')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("adversary parameter '" + part + "' must look like key=value");
        spec.params[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return spec;
}

std::string AdversarySpec::text() const
{
    std::string out = name;
    for (const auto& [key, value] : params)
        out += ":" + key + "=" + value;
    return out;
}

std::optional<Vector> adversary_scales(const AdversarySpec& spec)
{
    if (spec.name != "multiscale_adversarial" || !spec.params.count("c"))
        return std::nullopt;
    return parse_list(spec.params.at("c"));
}

namespace {

double scalar_param(const AdversarySpec& spec, const std::string& key, double fallback)
{
    const auto it = spec.params.find(key);
    if (it == spec.params.end())
        return fallback;
    const Vector v = parse_list(it->second);
    if (v.size() != 1)
        throw ArgumentError("adversary parameter '" + key + "' must be a single number");
    return v[0];
}

Vector vector_param(const AdversarySpec& spec, const std::string& key, const Vector& fallback, Index dim)
{
    const auto it = spec.params.find(key);
    const Vector v = it == spec.params.end() ? fallback : parse_list(it->second);
    if (v.size() != dim)
        throw ArgumentError("adversary parameter '" + key + "' needs " + std::to_string(dim) + " entries");
    return v;
}

/// Rescales a nonzero direction to dual norm L.
Vector to_dual_length(const Vector& s, const NormSpec& space, double L)
{
    const double size = dual_norm(s, space);
    if (size == 0.0)
        return Vector::Zero(s.size());
    return s * (L / size);
}

class Zero final : public Adversary
{
public:
    explicit Zero(Index dim) : dim_(dim) {}
    Vector gradient(Index, const Vector&) override { return Vector::Zero(dim_); }
    std::string name() const override { return "zero"; }
    nlohmann::json describe() const override { return {{"name", name()}}; }

private:
    Index dim_;
};

class Rademacher final : public Adversary
{
public:
    Rademacher(const NormSpec& space, double L, double bias, std::uint64_t seed)
        : space_(space), L_(L), bias_(bias), rng_(seed, 1)
    {
        if (!(std::abs(bias_) <= 1.0))
            throw ArgumentError("rademacher bias must lie in [-1, 1]");
    }
    Vector gradient(Index, const Vector&) override
    {
        Vector s(space_.dim());
        for (Index i = 0; i < s.size(); ++i)
            s[i] = rng_.sign(bias_);
        return to_dual_length(s, space_, L_);
    }
    std::string name() const override { return "rademacher"; }
    nlohmann::json describe() const override { return {{"name", name()}, {"bias", bias_}}; }

private:
    NormSpec space_;
    double L_;
    double bias_;
    RandomStream rng_;
};

class ConstantDirection final : public Adversary
{
public:
    ConstantDirection(const NormSpec& space, double L, const Vector& u) : u_(u), g_(to_dual_length(u, space, L))
    {
        if (dual_norm(u, space) == 0.0)
            throw ArgumentError("constant_direction needs a nonzero direction");
    }
    Vector gradient(Index, const Vector&) override { return g_; }
    std::string name() const override { return "constant_direction"; }
    nlohmann::json describe() const override { return {{"name", name()}, {"u", encode_vector(u_)}}; }

private:
    Vector u_;
    Vector g_;
};

/// Rademacher coordinates whose bias follows sin(2 pi t / period + phase_i).
class Drifting final : public Adversary
{
public:
    Drifting(const NormSpec& space, double L, double period, std::uint64_t seed)
        : space_(space), L_(L), period_(period), rng_(seed, 2), phase_(space.dim())
    {
        if (!(period_ > 0.0))
            throw ArgumentError("drifting period must be positive");
        RandomStream phases(seed, 3);
        for (Index i = 0; i < phase_.size(); ++i)
            phase_[i] = phases.uniform(0.0, 2.0 * std::numbers::pi);
    }
    Vector gradient(Index t, const Vector&) override
    {
        Vector s(space_.dim());
        for (Index i = 0; i < s.size(); ++i)
            s[i] = rng_.sign(std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period_ + phase_[i]));
        return to_dual_length(s, space_, L_);
    }
    std::string name() const override { return "drifting"; }
    nlohmann::json describe() const override { return {{"name", name()}, {"period", period_}}; }

private:
    NormSpec space_;
    double L_;
    double period_;
    RandomStream rng_;
    Vector phase_;
};

class ScQuadratic final : public Adversary
{
public:
    ScQuadratic(const NormSpec& space, double L, Vector w_star, double mu)
        : space_(space), L_(L), w_star_(std::move(w_star)), mu_(mu)
    {
        if (!(mu_ > 0.0))
            throw ArgumentError("sc_quadratic needs mu > 0");
    }
    Vector gradient(Index t, const Vector& played) override
    {
        Vector g = mu_ * (played - w_star_);
        const double size = dual_norm(g, space_);
        if (size > L_ * (1.0 + 1e-12))
            throw PreconditionError("sc_quadratic: gradient dual norm " + encode_real(size) + " at round " +
                                    std::to_string(t) + " exceeds lipschitz " + encode_real(L_) +
                                    "; enlarge the lipschitz constant");
        return g;
    }
    std::string name() const override { return "sc_quadratic"; }
    nlohmann::json describe() const override
    {
        return {{"name", name()}, {"mu", encode_real(mu_)}, {"w_star", encode_vector(w_star_)}};
    }
    LossModel loss_model() const override { return {LossModel::Kind::quadratic, mu_, w_star_}; }

private:
    NormSpec space_;
    double L_;
    Vector w_star_;
    double mu_;
};

/// Expert i's loss has magnitude c_i and a random sign, except that the
/// expert currently holding the most weight always loses.
class MultiScaleAdversarial final : public Adversary
{
public:
    MultiScaleAdversarial(Vector c, double flip, std::uint64_t seed) : c_(std::move(c)), flip_(flip), rng_(seed, 4)
    {
        for (Index i = 0; i < c_.size(); ++i)
            if (!(c_[i] > 0.0))
                throw ArgumentError("multiscale_adversarial scales must be positive");
    }
    Vector gradient(Index, const Vector& played) override
    {
        Vector g(c_.size());
        for (Index i = 0; i < g.size(); ++i)
            g[i] = c_[i] * rng_.sign();
        Index favourite = 0;
        played.maxCoeff(&favourite);
        g[favourite] = rng_.uniform() < flip_ ? -c_[favourite] : c_[favourite];
        return g;
    }
    std::string name() const override { return "multiscale_adversarial"; }
    nlohmann::json describe() const override
    {
        return {{"name", name()}, {"c", encode_vector(c_)}, {"flip", flip_}};
    }

private:
    Vector c_;
    double flip_;
    RandomStream rng_;
};

} // namespace

AdversaryPtr make_adversary(const AdversarySpec& spec, const NormSpec& space, double lipschitz, std::uint64_t seed)
{
    if (!(lipschitz > 0.0))
        throw ArgumentError("lipschitz constant must be positive");
    const Index d = space.dim();
    if (spec.name == "zero")
        return std::make_unique<Zero>(d);
    if (spec.name == "rademacher")
        return std::make_unique<Rademacher>(space, lipschitz, scalar_param(spec, "bias", 0.0), seed);
    if (spec.name == "constant_direction")
        return std::make_unique<ConstantDirection>(space, lipschitz,
                                                   vector_param(spec, "u", Vector::Unit(d, 0), d));
    if (spec.name == "drifting")
        return std::make_unique<Drifting>(space, lipschitz, scalar_param(spec, "period", 1000.0), seed);
    if (spec.name == "sc_quadratic") {
        Vector fallback(d);
        for (Index i = 0; i < d; ++i)
            fallback[i] = (i % 2 == 0 ? 0.5 : -0.5) / std::sqrt(static_cast<double>(d));
        return std::make_unique<ScQuadratic>(space, lipschitz, vector_param(spec, "w", fallback, d),
                                             scalar_param(spec, "mu", 1.0));
    }
    if (spec.name == "multiscale_adversarial") {
        const auto c = adversary_scales(spec);
        if (!c)
            throw ArgumentError("multiscale_adversarial needs c=<c1,...,cN>");
        if (c->size() != d)
            throw ArgumentError("multiscale_adversarial: number of scales must equal the dimension");
        return std::make_unique<MultiScaleAdversarial>(*c, scalar_param(spec, "flip", 0.1), seed);
    }
    throw ArgumentError("unknown adversary '" + spec.name + "'");
}

} // namespace olo
