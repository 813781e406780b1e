#include "olo/learner.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

namespace olo {

std::string encode_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

double decode_real(const std::string& text)
{
    if (text == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf")
        return std::numeric_limits<double>::infinity();
    if (text == "-inf")
        return -std::numeric_limits<double>::infinity();
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw ArgumentError("cannot decode real from '" + text + "'");
    return value;
}

nlohmann::json encode_vector(const Vector& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i)
        out.push_back(encode_real(v[i]));
    return out;
}

Vector decode_vector(const nlohmann::json& j)
{
    Vector out(static_cast<Index>(j.size()));
    for (Index i = 0; i < out.size(); ++i)
        out[i] = decode_real(j.at(i).get<std::string>());
    return out;
}

nlohmann::json encode_matrix(const Matrix& m)
{
    nlohmann::json out = nlohmann::json::array();
    for (Index r = 0; r < m.rows(); ++r)
        out.push_back(encode_vector(m.row(r).transpose()));
    return out;
}

Matrix decode_matrix(const nlohmann::json& j)
{
    const Index rows = static_cast<Index>(j.size());
    if (rows == 0)
        return Matrix();
    const Index cols = static_cast<Index>(j.at(0).size());
    Matrix out(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        if (static_cast<Index>(j.at(r).size()) != cols)
            throw ArgumentError("ragged matrix in checkpoint");
        out.row(r) = decode_vector(j.at(r)).transpose();
    }
    return out;
}

void expect_algo(const nlohmann::json& state, const std::string& algo)
{
    const std::string found = state.at("algo").get<std::string>();
    if (found != algo)
        throw ArgumentError("checkpoint is for '" + found + "', expected '" + algo + "'");
}

} // namespace olo
