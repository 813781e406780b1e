#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "olo/spaces.hpp"

namespace olo {

/// Name written into trace headers.
inline constexpr const char* kPrngName = "mt19937_64 seeded by splitmix64(seed ^ stream)";

std::uint64_t splitmix64(std::uint64_t x);

/// One independent random stream. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; conversions to doubles and
/// signs are done here so every platform sees the same values.
class RandomStream
{
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// +1 with probability (1 + bias) / 2, else -1.
    double sign(double bias = 0.0) { return uniform() < 0.5 * (1.0 + bias) ? 1.0 : -1.0; }
    /// Standard normal by Box-Muller (cosine branch only).
    double normal();

private:
    std::mt19937_64 engine_;
};

/// How comparators are scored: linear losses <g_t, w>, or the quadratic
/// mu/2 ||w - w_star||^2 whose gradient the adversary reports.
struct LossModel
{
    enum class Kind
    {
        linear,
        quadratic,
    };
    Kind kind = Kind::linear;
    double mu = 0.0;
    Vector w_star;
};

/// Produces the raw loss gradient of round t given the point played.
class Adversary
{
public:
    virtual ~Adversary() = default;
    virtual Vector gradient(Index t, const Vector& played) = 0;
    virtual std::string name() const = 0;
    virtual nlohmann::json describe() const = 0;
    virtual LossModel loss_model() const { return {}; }
};

using AdversaryPtr = std::unique_ptr<Adversary>;

/// Parsed "name[:key=value[:key=value...]]"; list values are comma separated.
struct AdversarySpec
{
    std::string name;
    std::map<std::string, std::string> params;

    static AdversarySpec parse(const std::string& text);
    std::string text() const;
};

/// Builds an adversary whose gradients have dual norm at most lipschitz.
AdversaryPtr make_adversary(const AdversarySpec& spec, const NormSpec& space, double lipschitz, std::uint64_t seed);

/// Scale vector of a multiscale_adversarial spec, if present.
std::optional<Vector> adversary_scales(const AdversarySpec& spec);

Vector parse_list(const std::string& text);

} // namespace olo
