#pragma once

#include <cmath>

#include "olo/learner.hpp"
#include "olo/settings.hpp"

namespace olo {

/// Step multiplier 2 / (2 - ln 3) of the coin-betting ONS update, i.e. 1/beta
/// for beta = (2 - ln 3) / 2.
inline const double kBettingStep = 2.0 / (2.0 - std::log(3.0));
inline const double kBettingBeta = (2.0 - std::log(3.0)) / 2.0;

// ---------------------------------------------------------------------------
// One-dimensional coin betting

struct BettingState1D
{
    double epsilon = 1.0;
    double wealth = 1.0;
    double v = 0.0;      // betting fraction, |v| <= 1/2
    double A = 1.0;      // 1 + sum z_i^2
    double last_w = 0.0; // most recent bet
};

BettingState1D make_betting_state_1d(double epsilon);

/// Bet v * wealth.
double predict_1d(const BettingState1D& state);

/// One round on coin outcome g in [-1, 1]. Throws PreconditionError for
/// |g| > 1 and NumericError if 1 - g v falls below the configured floor.
BettingState1D update_1d(BettingState1D state, double g);

class CoinBetting1D final : public Learner
{
public:
    explicit CoinBetting1D(double epsilon = 1.0);

    Index dim() const override { return 1; }
    Vector predict() const override;
    void update(const Vector& gradient) override;
    std::string algo() const override { return "coin1d"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<CoinBetting1D>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;
    std::optional<double> wealth() const override { return state_.wealth; }

    const BettingState1D& state() const { return state_; }

private:
    BettingState1D state_;
};

// ---------------------------------------------------------------------------
// Online Newton Step machinery

/// Keeps A and A^{-1} in sync under rank-one growth A += z z^T using the
/// Sherman-Morrison identity, with periodic full re-inversion.
class RankOneInverse
{
public:
    RankOneInverse() = default;
    RankOneInverse(Index dim, double tau);

    void add_outer(const Vector& z);
    void recondition();

    const Matrix& matrix() const { return a_; }
    const Matrix& inverse() const { return a_inv_; }
    /// max_ij |(A A^{-1} - I)_ij|
    double residual() const;
    long updates() const { return updates_; }
    long reconditions() const { return reconditions_; }

    nlohmann::json save() const;
    void load(const nlohmann::json& j);

private:
    Matrix a_;
    Matrix a_inv_;
    long updates_ = 0;
    long reconditions_ = 0;
};

struct OnsConfig
{
    double beta = kBettingBeta;
    double tau = 1.0;
    double radius = 0.5;

    /// Parameters for alpha-exp-concave losses with gradient dual norm <= Z on
    /// a domain of diameter D: beta = min(1/(4 Z D), alpha) / 2,
    /// tau = 1 / (beta D)^2.
    static OnsConfig for_exp_concave(double alpha, double gradient_bound, double diameter);

    void validate() const;
};

struct OnsState
{
    NormSpec spec = NormSpec::euclidean(1);
    Vector v;              // current iterate, inside the radius ball
    RankOneInverse metric; // A = tau I + sum z z^T
    long steps = 0;
};

OnsState make_ons_state(const NormSpec& spec, const OnsConfig& config);

/// argmin over {||y||_spec <= radius} of (y - x)^T A (y - x). Returns x itself
/// when already feasible. Throws NumericError when the iterative solver does
/// not settle within NumericSettings::projection_max_iterations.
Vector generalized_projection(const Vector& x, const Matrix& A, double radius, const NormSpec& spec);

/// Euclidean (A = I) projection onto {||y||_spec <= radius}.
Vector euclidean_ball_projection(const Vector& x, double radius, const NormSpec& spec);

/// A += z z^T, then v <- Pi^A(v - (1/beta) A^{-1} z).
void ons_step(OnsState& state, const Vector& z, const OnsConfig& config);

/// Generic ONS as a learner: plays v_t, consumes loss gradients z_t.
class OnsLearner final : public Learner
{
public:
    OnsLearner(const NormSpec& spec, const OnsConfig& config);

    Index dim() const override { return state_.spec.dim(); }
    Vector predict() const override { return state_.v; }
    void update(const Vector& gradient) override;
    std::string algo() const override { return "ons"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<OnsLearner>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;

    const OnsState& state() const { return state_; }
    const OnsConfig& config() const { return config_; }

private:
    OnsConfig config_;
    OnsState state_;
};

// ---------------------------------------------------------------------------
// Coin betting in R^d under any supported norm

struct BettingStateBanach
{
    double epsilon = 1.0;
    double wealth = 1.0;
    OnsState ons; // betting fraction v lives in ons.v, norm(v) <= 1/2
    Vector last_w;
    long step_count = 0;
};

class CoinBetting final : public Learner
{
public:
    CoinBetting(const NormSpec& spec, double epsilon = 1.0);

    Index dim() const override { return state_.ons.spec.dim(); }
    Vector predict() const override;
    void update(const Vector& gradient) override;
    std::string algo() const override { return "coin"; }
    std::unique_ptr<Learner> clone() const override { return std::make_unique<CoinBetting>(*this); }
    nlohmann::json save() const override;
    void load(const nlohmann::json& state) override;
    std::optional<double> wealth() const override { return state_.wealth; }

    const BettingStateBanach& state() const { return state_; }
    const NormSpec& spec() const { return state_.ons.spec; }

private:
    BettingStateBanach state_;
};

} // namespace olo
