#include "olo/spaces.hpp"

#include <sstream>

namespace olo {

namespace {

void require_positive_dim(Index dim)
{
    if (dim < 1)
        throw ArgumentError("space dimension must be positive, got " + std::to_string(dim));
}

} // namespace

NormSpec NormSpec::euclidean(Index dim)
{
    require_positive_dim(dim);
    return NormSpec(NormKind::euclidean, dim, 2.0, Vector());
}

NormSpec NormSpec::p_norm(double p, Index dim)
{
    require_positive_dim(dim);
    if (!(p > 1.0) || !std::isfinite(p))
        throw ArgumentError("p-norm exponent must lie in (1, inf), got " + std::to_string(p));
    return NormSpec(NormKind::p_norm, dim, p, Vector());
}

NormSpec NormSpec::l1(Index dim)
{
    require_positive_dim(dim);
    return NormSpec(NormKind::l1, dim, 1.0, Vector());
}

NormSpec NormSpec::weighted_linf(Vector scales)
{
    require_positive_dim(scales.size());
    for (Index i = 0; i < scales.size(); ++i)
        if (!(scales[i] > 0.0) || !std::isfinite(scales[i]))
            throw ArgumentError("weighted_linf scales must be strictly positive");
    const Index dim = scales.size();
    return NormSpec(NormKind::weighted_linf, dim, 0.0, std::move(scales));
}

std::string NormSpec::describe() const
{
    std::ostringstream out;
    switch (kind_) {
    case NormKind::euclidean:
        out << "euclidean";
        break;
    case NormKind::p_norm:
        out << "p_norm(" << p_ << ")";
        break;
    case NormKind::l1:
        out << "l1";
        break;
    case NormKind::weighted_linf:
        out << "weighted_linf";
        break;
    }
    out << "[d=" << dim_ << "]";
    return out.str();
}

void to_json(nlohmann::json& j, const NormSpec& spec)
{
    j = nlohmann::json::object();
    switch (spec.kind()) {
    case NormKind::euclidean:
        j["kind"] = "euclidean";
        break;
    case NormKind::p_norm:
        j["kind"] = "p_norm";
        j["p"] = spec.p();
        break;
    case NormKind::l1:
        j["kind"] = "l1";
        break;
    case NormKind::weighted_linf:
        j["kind"] = "weighted_linf";
        j["scales"] = std::vector<double>(spec.scales().begin(), spec.scales().end());
        break;
    }
    j["dim"] = spec.dim();
}

NormSpec norm_spec_from_json(const nlohmann::json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "weighted_linf") {
        const auto scales = j.at("scales").get<std::vector<double>>();
        Vector c = Eigen::Map<const Vector>(scales.data(), static_cast<Index>(scales.size()));
        if (j.contains("dim") && j.at("dim").get<Index>() != c.size())
            throw ArgumentError("weighted_linf: dim does not match number of scales");
        return NormSpec::weighted_linf(std::move(c));
    }
    const Index dim = j.at("dim").get<Index>();
    if (kind == "euclidean")
        return NormSpec::euclidean(dim);
    if (kind == "p_norm")
        return NormSpec::p_norm(j.at("p").get<double>(), dim);
    if (kind == "l1")
        return NormSpec::l1(dim);
    throw ArgumentError("unknown norm kind '" + kind + "'");
}

NormSpec parse_space(const std::string& text, Index dim)
{
    if (text == "euclidean" || text == "l2")
        return NormSpec::euclidean(dim);
    if (text == "l1")
        return NormSpec::l1(dim);
    if (text.rfind("p:", 0) == 0) {
        const double p = std::stod(text.substr(2));
        if (p == 2.0)
            return NormSpec::euclidean(dim);
        return NormSpec::p_norm(p, dim);
    }
    if (text.rfind("winf:", 0) == 0) {
        std::vector<double> values;
        std::stringstream items(text.substr(5));
        std::string item;
        while (std::getline(items, item, ','))
            values.push_back(std::stod(item));
        if (static_cast<Index>(values.size()) != dim)
            throw ArgumentError("winf space needs exactly dim scales");
        return NormSpec::weighted_linf(Eigen::Map<const Vector>(values.data(), dim));
    }
    throw ArgumentError("cannot parse space '" + text + "'");
}

double convexity_constant(const NormSpec& spec)
{
    switch (spec.kind()) {
    case NormKind::euclidean:
        return 1.0;
    case NormKind::p_norm:
        if (spec.p() > 2.0)
            throw UnsupportedError("uniform convexity constant undefined for p > 2");
        return spec.p() - 1.0;
    default:
        throw UnsupportedError("uniform convexity constant undefined for " + spec.describe());
    }
}

} // namespace olo
