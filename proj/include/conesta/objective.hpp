#pragma once

#include <Eigen/Core>

#include "conesta/grid.hpp"
#include "conesta/model.hpp"
#include "conesta/penalties.hpp"

namespace conesta {

/// f(β) = logistic loss + l2‖β‖² + l1‖β‖₁ + tv·TV(β).
double objective_exact(const Dataset& data, const GradientOperator& op,
                       const PenaltyWeights& weights, const Eigen::VectorXd& beta);

/// f_μ(β): f with TV replaced by TV_μ.
double objective_smoothed(const Dataset& data, const GradientOperator& op,
                          const PenaltyWeights& weights, const Eigen::VectorXd& beta,
                          SmoothingParam mu);

/// Elastic-net objective (no TV term): loss + l2‖β‖² + l1‖β‖₁.
double objective_elastic_net(const Dataset& data, const PenaltyWeights& weights,
                             const Eigen::VectorXd& beta);

} // namespace conesta
