#include "conesta/continuation.hpp"

#include <cmath>
#include <random>
#include <string>

#include "conesta/objective.hpp"

namespace conesta {

double mu_opt(double eps, double tv_weight, double spectral_norm_a, double lipschitz_smooth,
              std::size_t p)
{
    if (!(eps > 0.0)) throw InvalidArgument("mu_opt: eps must be positive");
    if (!(tv_weight >= 0.0)) throw InvalidArgument("mu_opt: tv weight must be nonnegative");
    if (!(lipschitz_smooth > 0.0)) throw InvalidArgument("mu_opt: L0 must be positive");
    if (p == 0) throw InvalidArgument("mu_opt: p must be positive");
    if (tv_weight > 0.0 && !(spectral_norm_a > 0.0)) {
        throw InvalidArgument("mu_opt: TV is active but the gradient operator is zero");
    }
    const double m = 0.5 * static_cast<double>(p);
    const double a2 = spectral_norm_a * spectral_norm_a;
    if (a2 == 0.0) throw InvalidArgument("mu_opt: undefined for a zero gradient operator");
    const double b = tv_weight * m * a2;
    const double disc = b * b + eps * m * lipschitz_smooth * a2;
    // Same value as −tv·a2/L₀ + √disc/(M·L₀), rearranged so the two large
    // terms never cancel: √disc − b = (disc − b²)/(√disc + b).
    return eps * a2 / (std::sqrt(disc) + b);
}

double continuation_eps(std::size_t run)
{
    if (run == 0) throw InvalidArgument("continuation runs are numbered from 1");
    return std::ldexp(1.0, -static_cast<int>(run - 1));
}

ContinuationSchedule continuation_schedule(double target_eps, double tv_weight,
                                           double spectral_norm_a, double lipschitz_smooth,
                                           std::size_t p)
{
    if (!(target_eps > 0.0)) throw InvalidArgument("target precision must be positive");
    ContinuationSchedule s;
    s.target_eps = target_eps;
    for (std::size_t i = 1;; ++i) {
        const double eps = continuation_eps(i);
        if (eps < target_eps) break;
        s.eps.push_back(eps);
        s.mu.push_back(mu_opt(eps, tv_weight, spectral_norm_a, lipschitz_smooth, p));
    }
    return s;
}

InitMode parse_init_mode(std::string_view name)
{
    if (name == "zeros") return InitMode::zeros;
    if (name == "random_unit") return InitMode::random_unit;
    throw InvalidArgument("unknown init mode '" + std::string(name) + "'");
}

std::string_view to_string(InitMode mode)
{
    return mode == InitMode::zeros ? "zeros" : "random_unit";
}

Eigen::VectorXd init_beta(std::size_t p, InitMode mode, std::uint64_t seed)
{
    if (p == 0) throw InvalidArgument("init_beta: p must be positive");
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    if (mode == InitMode::zeros) return beta;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    do {
        for (Eigen::Index j = 0; j < beta.size(); ++j) beta[j] = normal(rng);
    } while (beta.squaredNorm() == 0.0);
    beta /= beta.norm();
    return beta;
}

FitResult conesta_fit(const Dataset& data, const GradientOperator& op,
                      const PenaltyWeights& weights, Eigen::VectorXd beta0, double target_eps,
                      const FistaConfig& inner, std::uint64_t seed, double inner_tol_scale)
{
    weights.validate();
    data.validate();
    if (!(target_eps > 0.0)) throw InvalidArgument("target precision must be positive");
    if (data.features() != op.groups() || static_cast<std::size_t>(beta0.size()) != op.groups()) {
        throw InvalidArgument("dataset, operator and start point disagree on p");
    }

    FitResult fit;
    PowerIterationOptions power;
    power.seed = seed;
    fit.constants.spectral_norm_x = data_spectral_norm(data, power);
    fit.constants.spectral_norm_a = op.spectral_norm();
    fit.constants.lipschitz_smooth =
        smooth_part_lipschitz(data, weights.l2, fit.constants.spectral_norm_x);
    const double l0 = fit.constants.lipschitz_smooth;

    if (weights.tv == 0.0) {
        FistaConfig cfg = inner;
        try {
            cfg.step_size = fista_step_size(l0);
            FistaResult r = fista_run_elastic_net(data, weights, std::move(beta0), cfg);
            ContinuationRun run;
            run.eps = target_eps;
            run.step_size = cfg.step_size;
            run.tol = cfg.tol;
            run.inner_iterations = r.iterations;
            run.converged = r.converged;
            run.objective_exact = objective_elastic_net(data, weights, r.beta);
            run.objective_smoothed = run.objective_exact;
            fit.runs.push_back(run);
            fit.total_inner_iterations = r.iterations;
            fit.beta = std::move(r.beta);
        } catch (const Error& e) {
            throw ContinuationError(e.what(), 1);
        }
        return fit;
    }

    Eigen::VectorXd beta = std::move(beta0);
    for (std::size_t i = 1;; ++i) {
        const double eps = continuation_eps(i);
        if (eps < target_eps) break;
        try {
            const SmoothingParam mu(mu_opt(eps, weights.tv, fit.constants.spectral_norm_a, l0,
                                           op.groups()));
            FistaConfig cfg = inner;
            cfg.step_size = fista_step_size(l0, weights, fit.constants.spectral_norm_a, mu);
            cfg.tol = std::max(inner.tol, eps * inner_tol_scale);
            FistaResult r = fista_run(data, op, weights, mu, std::move(beta), cfg);

            ContinuationRun run;
            run.eps = eps;
            run.mu = mu.value();
            run.step_size = cfg.step_size;
            run.tol = cfg.tol;
            run.inner_iterations = r.iterations;
            run.converged = r.converged;
            run.objective_smoothed = objective_smoothed(data, op, weights, r.beta, mu);
            run.objective_exact = objective_exact(data, op, weights, r.beta);
            fit.runs.push_back(run);
            fit.total_inner_iterations += r.iterations;
            beta = std::move(r.beta);
        } catch (const Error& e) {
            throw ContinuationError(e.what(), i);
        }
    }
    fit.beta = std::move(beta);
    return fit;
}

} // namespace conesta
