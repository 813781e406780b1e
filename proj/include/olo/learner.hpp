#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "olo/spaces.hpp"

namespace olo {

/// What a reduction forwarded to its child in the most recent round: the
/// child's point and the gradient it was sent.
struct StepRecord
{
    Vector inner_point;
    Vector inner_gradient;
};

/// Online linear learner: predict() is a pure read of the current state,
/// update() consumes the gradient observed at that prediction.
class Learner
{
public:
    virtual ~Learner() = default;

    virtual Index dim() const = 0;
    virtual Vector predict() const = 0;
    virtual void update(const Vector& gradient) = 0;

    /// Recipe name ("coin1d", "dimfree", ...).
    virtual std::string algo() const = 0;
    virtual std::unique_ptr<Learner> clone() const = 0;

    /// Checkpoint of the full mutable state, children included. Reals are
    /// encoded as shortest round-trip decimal strings.
    virtual nlohmann::json save() const = 0;
    /// Restores a checkpoint produced by save() on a learner built from the
    /// same recipe.
    virtual void load(const nlohmann::json& state) = 0;

    virtual std::optional<double> wealth() const { return std::nullopt; }
    virtual std::optional<StepRecord> last_step() const { return std::nullopt; }
};

using LearnerPtr = std::unique_ptr<Learner>;

// Exact real <-> string encoding used by checkpoints and traces.
std::string encode_real(double value);
double decode_real(const std::string& text);
nlohmann::json encode_vector(const Vector& v);
Vector decode_vector(const nlohmann::json& j);
nlohmann::json encode_matrix(const Matrix& m);
Matrix decode_matrix(const nlohmann::json& j);

/// Throws ArgumentError unless the checkpoint names the expected algorithm.
void expect_algo(const nlohmann::json& state, const std::string& algo);

} // namespace olo
