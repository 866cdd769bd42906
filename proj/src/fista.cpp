#include "conesta/fista.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conesta/error.hpp"
#include "conesta/objective.hpp"

namespace conesta {

namespace {

void check_config(const FistaConfig& cfg)
{
    if (!(cfg.step_size > 0.0) || !std::isfinite(cfg.step_size)) {
        throw InvalidArgument("FISTA step size must be positive and finite");
    }
    if (cfg.max_iter == 0) {
        throw InvalidArgument("FISTA max_iter must be positive");
    }
    if (!(cfg.tol > 0.0)) {
        throw InvalidArgument("FISTA tol must be positive");
    }
}

// `smooth` returns value and gradient of the differentiable part at a point;
// `objective` evaluates the full f_μ for the trace.
template <class Smooth, class Objective>
FistaResult fista_core(Smooth&& smooth, Objective&& objective, double l1, Eigen::VectorXd beta0,
                       const FistaConfig& cfg)
{
    check_config(cfg);
    if (!beta0.allFinite()) {
        throw InvalidArgument("FISTA start point has non-finite entries");
    }
    const double t = cfg.step_size;
    const double threshold = t * l1;

    FistaResult result;
    Eigen::VectorXd x_prev = std::move(beta0);
    Eigen::VectorXd y = x_prev;
    Eigen::VectorXd x;
    double tau = 1.0;

    if (cfg.record_trace) result.objective_trace.reserve(std::min<std::size_t>(cfg.max_iter, 1 << 16));

    for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
        const ValueGradient vg = smooth(y);
        if (!std::isfinite(vg.value) || !vg.gradient.allFinite()) {
            throw SolverError("non-finite objective", k);
        }
        x = prox_l1(y - t * vg.gradient, threshold);

        const double tau_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tau * tau));
        const double momentum = (tau - 1.0) / tau_next;
        const double step_norm = (x - x_prev).norm() / t;
        y = x + momentum * (x - x_prev);
        tau = tau_next;

        if (cfg.record_trace) {
            const double f = objective(x);
            if (!std::isfinite(f)) throw SolverError("non-finite objective", k);
            result.objective_trace.push_back(f);
        }
        if (cfg.on_iterate) cfg.on_iterate(k, x);

        result.iterations = k;
        x_prev.swap(x);
        if (step_norm <= cfg.tol) {
            result.converged = true;
            break;
        }
    }
    result.beta = std::move(x_prev);
    return result;
}

} // namespace

double fista_step_size(double lipschitz_smooth, const PenaltyWeights& weights,
                       double spectral_norm_a, SmoothingParam mu)
{
    if (lipschitz_smooth < 0.0 || spectral_norm_a < 0.0) {
        throw InvalidArgument("Lipschitz constant and spectral norm must be nonnegative");
    }
    weights.validate();
    const double denom =
        lipschitz_smooth + weights.tv * spectral_norm_a * spectral_norm_a / mu.value();
    if (!(denom > 0.0)) {
        throw InvalidArgument("unregularized smooth part has unknown curvature");
    }
    return 1.0 / denom;
}

double fista_step_size(double lipschitz_smooth)
{
    if (!(lipschitz_smooth > 0.0)) {
        throw InvalidArgument("unregularized smooth part has unknown curvature");
    }
    return 1.0 / lipschitz_smooth;
}

FistaResult fista_run(const Dataset& data, const GradientOperator& op,
                      const PenaltyWeights& weights, SmoothingParam mu, Eigen::VectorXd beta0,
                      const FistaConfig& cfg)
{
    if (weights.tv == 0.0) {
        return fista_run_elastic_net(data, weights, std::move(beta0), cfg);
    }
    weights.validate();
    if (static_cast<std::size_t>(beta0.size()) != op.groups() ||
        data.features() != op.groups()) {
        throw InvalidArgument("FISTA: dataset, operator and start point disagree on p");
    }
    auto smooth = [&](const Eigen::VectorXd& b) {
        ValueGradient vg = logistic_loss_value_gradient(data, b);
        vg.value += weights.l2 * b.squaredNorm();
        vg.gradient += (2.0 * weights.l2) * b;
        const ValueGradient tv = tv_smoothed_value_gradient(op, b, mu);
        vg.value += weights.tv * tv.value;
        vg.gradient += weights.tv * tv.gradient;
        return vg;
    };
    auto objective = [&](const Eigen::VectorXd& b) {
        return objective_smoothed(data, op, weights, b, mu);
    };
    return fista_core(smooth, objective, weights.l1, std::move(beta0), cfg);
}

FistaResult fista_run_elastic_net(const Dataset& data, const PenaltyWeights& weights,
                                  Eigen::VectorXd beta0, const FistaConfig& cfg)
{
    weights.validate();
    if (weights.tv != 0.0) {
        throw InvalidArgument("elastic-net FISTA called with a nonzero TV weight");
    }
    if (static_cast<std::size_t>(beta0.size()) != data.features()) {
        throw InvalidArgument("FISTA: dataset and start point disagree on p");
    }
    auto smooth = [&](const Eigen::VectorXd& b) {
        ValueGradient vg = logistic_loss_value_gradient(data, b);
        vg.value += weights.l2 * b.squaredNorm();
        vg.gradient += (2.0 * weights.l2) * b;
        return vg;
    };
    auto objective = [&](const Eigen::VectorXd& b) {
        return objective_elastic_net(data, weights, b);
    };
    return fista_core(smooth, objective, weights.l1, std::move(beta0), cfg);
}

} // namespace conesta
