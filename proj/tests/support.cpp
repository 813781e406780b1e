#include "support.hpp"

#include <cmath>
#include <limits>

namespace olo::testing {

Vector uniform_vector(RandomStream& rng, Index d, double lo, double hi)
{
    Vector v(d);
    for (Index i = 0; i < d; ++i)
        v[i] = rng.uniform(lo, hi);
    return v;
}

Vector random_gradient(RandomStream& rng, const NormSpec& spec, double size)
{
    Vector v = Vector::Zero(spec.dim());
    while (dual_norm(v, spec) == 0.0)
        v = uniform_vector(rng, spec.dim(), -1.0, 1.0);
    return v * (size / dual_norm(v, spec));
}

Vector random_bounded_gradient(RandomStream& rng, const NormSpec& spec)
{
    return random_gradient(rng, spec, rng.uniform());
}

double brute_simplex_distance(const Vector& x, const Vector& c, double k)
{
    const Index n = x.size();
    const Vector a = k * c;
    double best = std::numeric_limits<double>::infinity();
    for (Index free = 0; free < n; ++free) {
        const unsigned combos = 1u << static_cast<unsigned>(n - 1);
        for (unsigned mask = 0; mask < combos; ++mask) {
            Vector lam = Vector::Zero(n);
            bool valid = true;
            unsigned bit = 0;
            for (Index i = 0; i < n; ++i) {
                if (i == free)
                    continue;
                if (mask & (1u << bit)) {
                    const double kink = x[i] / a[i];
                    if (kink < 0.0)
                        valid = false;
                    lam[i] = kink;
                }
                ++bit;
            }
            lam[free] = 1.0 - lam.sum();
            if (!valid || lam[free] < 0.0)
                continue;
            const double dist = (x - a.cwiseProduct(lam)).cwiseAbs().sum();
            best = std::min(best, dist);
        }
    }
    return best;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double nn = static_cast<double>(n);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

std::vector<double> rademacher_stream(std::uint64_t seed, Index T)
{
    RandomStream rng(seed, 99);
    std::vector<double> out(static_cast<std::size_t>(T));
    for (auto& g : out)
        g = rng.sign();
    return out;
}

} // namespace olo::testing
