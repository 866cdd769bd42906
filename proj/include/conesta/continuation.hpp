#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "conesta/error.hpp"
#include "conesta/fista.hpp"
#include "conesta/grid.hpp"
#include "conesta/model.hpp"
#include "conesta/penalties.hpp"

namespace conesta {

/// Smoothing parameter minimizing the worst-case FISTA iteration count
/// needed to reach precision eps on the unsmoothed objective, with M = p/2:
///
///   μ = −tv‖A‖²/L₀ + √((tv·M·‖A‖²)² + eps·M·L₀·‖A‖²) / (M·L₀)
double mu_opt(double eps, double tv_weight, double spectral_norm_a, double lipschitz_smooth,
              std::size_t p);

/// Precision ε⁽ⁱ⁾ = 2^−(i−1) for i >= 1.
double continuation_eps(std::size_t run);

struct ContinuationSchedule {
    std::vector<double> eps;
    std::vector<double> mu;
    double target_eps = 0.0;
};

/// Every (ε⁽ⁱ⁾, μ_opt(ε⁽ⁱ⁾)) with ε⁽ⁱ⁾ >= target_eps.
ContinuationSchedule continuation_schedule(double target_eps, double tv_weight,
                                           double spectral_norm_a, double lipschitz_smooth,
                                           std::size_t p);

struct ContinuationRun {
    double eps = 0.0;
    /// Zero when the run was unsmoothed (tv weight 0).
    double mu = 0.0;
    double step_size = 0.0;
    double tol = 0.0;
    std::size_t inner_iterations = 0;
    bool converged = false;
    double objective_smoothed = 0.0;
    double objective_exact = 0.0;

    bool operator==(const ContinuationRun&) const = default;
};

struct FitConstants {
    double lipschitz_smooth = 0.0;
    double spectral_norm_a = 0.0;
    double spectral_norm_x = 0.0;

    bool operator==(const FitConstants&) const = default;
};

struct FitResult {
    Eigen::VectorXd beta;
    std::vector<ContinuationRun> runs;
    std::size_t total_inner_iterations = 0;
    FitConstants constants;
};

enum class InitMode { zeros, random_unit };

InitMode parse_init_mode(std::string_view name);
std::string_view to_string(InitMode mode);

/// Starting point: all zeros, or a seeded Gaussian draw scaled to unit norm.
Eigen::VectorXd init_beta(std::size_t p, InitMode mode, std::uint64_t seed);

/// Inner-solver failure annotated with the 1-based continuation run.
class ContinuationError : public Error {
public:
    ContinuationError(const std::string& what, std::size_t run)
        : Error("continuation run " + std::to_string(run) + ": " + what), run_(run) {}

    std::size_t run() const noexcept { return run_; }

private:
    std::size_t run_;
};

/// Continuation with Nesterov smoothing.
///
/// Run i smooths TV with μ⁽ⁱ⁾ = μ_opt(2^−(i−1)) and warm-starts FISTA from
/// the previous run's solution. The loop stops once the next precision would
/// fall below target_eps. Run i stops its inner loop at tolerance
/// max(inner.tol, ε⁽ⁱ⁾·inner_tol_scale) or at inner.max_iter; inner.step_size
/// is ignored and recomputed per run.
///
/// With a zero TV weight no smoothing takes place: a single elastic-net
/// FISTA run at tolerance inner.tol is performed.
///
/// `seed` drives the power iteration estimating ‖X‖₂.
FitResult conesta_fit(const Dataset& data, const GradientOperator& op,
                      const PenaltyWeights& weights, Eigen::VectorXd beta0, double target_eps,
                      const FistaConfig& inner, std::uint64_t seed,
                      double inner_tol_scale = 1.0);

} // namespace conesta
