#pragma once

#include <Eigen/Core>

#include "conesta/grid.hpp"

namespace conesta {

/// Nonnegative strengths of the ℓ2 (squared), ℓ1 and TV penalties. Any of
/// them may be zero.
struct PenaltyWeights {
    double l2 = 0.0;
    double l1 = 0.0;
    double tv = 0.0;

    /// Throws InvalidArgument unless every weight is finite and >= 0.
    void validate() const;
};

/// Nesterov smoothing parameter, strictly positive.
class SmoothingParam {
public:
    explicit SmoothingParam(double mu);
    double value() const noexcept { return mu_; }

private:
    double mu_;
};

struct ValueGradient {
    double value = 0.0;
    Eigen::VectorXd gradient;
};

/// Σᵢ ‖(Aβ)ᵢ‖₂ over the per-voxel 3-vectors.
double tv_exact(const GradientOperator& op, const Eigen::VectorXd& beta);

/// Projects every consecutive 3-vector onto the unit ℓ2 ball.
Eigen::VectorXd project_dual(Eigen::VectorXd alpha);

/// Smoothed TV: max over the dual ball of ⟨α, Aβ⟩ − μ/2‖α‖².
///
/// Evaluated group by group in closed form: a group with gradient norm
/// r contributes r²/(2μ) when r <= μ and r − μ/2 otherwise, which is the
/// value attained at α* = proj(Aβ/μ). The closed form keeps
/// tv_smoothed <= tv_exact under rounding.
double tv_smoothed(const GradientOperator& op, const Eigen::VectorXd& beta, SmoothingParam mu);

/// Aᵀ proj(Aβ/μ). Lipschitz with constant ‖A‖₂²/μ.
Eigen::VectorXd tv_smoothed_gradient(const GradientOperator& op, const Eigen::VectorXd& beta,
                                     SmoothingParam mu);

/// Value and gradient of TV_μ from a single application of A.
ValueGradient tv_smoothed_value_gradient(const GradientOperator& op, const Eigen::VectorXd& beta,
                                         SmoothingParam mu);

/// Soft-thresholding. Entries with |x| <= threshold become +0.0 exactly.
Eigen::VectorXd prox_l1(const Eigen::VectorXd& x, double threshold);

/// l2·‖β‖₂² and its gradient 2·l2·β.
ValueGradient l2_value_gradient(const Eigen::VectorXd& beta, double l2);

} // namespace conesta
