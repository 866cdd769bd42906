#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "conesta/grid.hpp"
#include "conesta/model.hpp"
#include "conesta/penalties.hpp"

namespace conesta {

struct FistaConfig {
    /// Constant step t_μ. Must not exceed 1/(L₀ + tv·‖A‖₂²/μ); see fista_step_size.
    double step_size = 0.0;
    std::size_t max_iter = 10000;
    /// Stop once ‖β⁽ᵏ⁾ − β⁽ᵏ⁻¹⁾‖₂ / t_μ <= tol.
    double tol = 1e-6;
    bool record_trace = false;
    /// Called with (k, β⁽ᵏ⁾) after every iteration, k starting at 1.
    std::function<void(std::size_t, const Eigen::VectorXd&)> on_iterate;
};

struct FistaResult {
    Eigen::VectorXd beta;
    std::size_t iterations = 0;
    /// f_μ(β⁽ᵏ⁾) for k = 1..iterations when record_trace is set.
    std::vector<double> objective_trace;
    bool converged = false;
};

/// 1/(L₀ + tv·‖A‖₂²/μ).
double fista_step_size(double lipschitz_smooth, const PenaltyWeights& weights,
                       double spectral_norm_a, SmoothingParam mu);

/// Step size for the unsmoothed elastic-net problem: 1/L₀.
double fista_step_size(double lipschitz_smooth);

/// Minimizes f_μ = loss + l2‖β‖² + tv·TV_μ + l1‖β‖₁ by FISTA with the
/// Beck–Teboulle momentum sequence and a constant step. A zero tv weight
/// skips the TV term entirely.
FistaResult fista_run(const Dataset& data, const GradientOperator& op,
                      const PenaltyWeights& weights, SmoothingParam mu, Eigen::VectorXd beta0,
                      const FistaConfig& cfg);

/// FISTA on loss + l2‖β‖² + l1‖β‖₁. Requires weights.tv == 0.
FistaResult fista_run_elastic_net(const Dataset& data, const PenaltyWeights& weights,
                                  Eigen::VectorXd beta0, const FistaConfig& cfg);

} // namespace conesta
