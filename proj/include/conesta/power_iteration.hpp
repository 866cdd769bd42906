#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "conesta/error.hpp"

namespace conesta {

struct PowerIterationOptions {
    double tol = 1e-6;
    std::size_t max_iter = 10000;
    std::uint64_t seed = 42;
};

/// Thrown when power iteration does not meet its tolerance within max_iter.
/// Carries the last unit-norm iterate and the last singular-value estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, double last_estimate)
        : Error(what), last_iterate_(std::move(last_iterate)), last_estimate_(last_estimate) {}

    const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
    double last_estimate() const noexcept { return last_estimate_; }

private:
    Eigen::VectorXd last_iterate_;
    double last_estimate_;
};

/// Applies the normal operator MᵀM of some linear map M to a vector of length `cols`.
using NormalOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Largest singular value of M, by power iteration on MᵀM.
///
/// Iterates v <- MᵀMv / ‖MᵀMv‖ from a seeded random start and stops once the
/// eigen-residual ‖MᵀMv − λv‖ falls below tol·λ, where λ is the Rayleigh
/// quotient. Returns √λ. An operator that annihilates the start vector
/// returns 0 immediately.
double spectral_norm_power(std::size_t cols, const NormalOperator& normal_op,
                           const PowerIterationOptions& opts = {});

/// ‖X‖₂ for a dense matrix via the same routine.
double spectral_norm_power(const Eigen::MatrixXd& x, const PowerIterationOptions& opts = {});

} // namespace conesta
