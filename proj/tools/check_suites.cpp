#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli_config.hpp"
#include "conesta/continuation.hpp"
#include "conesta/objective.hpp"
#include "conesta/penalties.hpp"
#include "conesta/testing/instances.hpp"
#include "conesta/testing/oracles.hpp"

namespace conesta::cli {

namespace {

using Eigen::VectorXd;

struct CheckLine {
    std::string name;
    double tolerance;
    double observed;
    bool pass() const { return std::isfinite(observed) && observed <= tolerance; }
};

double relative_error(const VectorXd& got, const VectorXd& want)
{
    return (got - want).norm() / std::max(want.norm(), 1e-12);
}

std::vector<CheckLine> suite_gradients(std::uint64_t seed)
{
    double worst_tv = 0.0, worst_g = 0.0;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const auto inst = testing::random_instance({4, 3, 3}, 12, 0.8, seed + k);
        const GradientOperator op(inst.volume);
        const VectorXd beta = testing::random_vector(inst.volume.size(), seed + 1000 + k);
        const SmoothingParam mu(0.5);
        const auto tv = [&](const VectorXd& b) { return tv_smoothed(op, b, mu); };
        worst_tv = std::max(worst_tv, relative_error(tv_smoothed_gradient(op, beta, mu),
                                                     oracles::central_difference(tv, beta, 1e-6)));
        const double l2 = 0.3;
        const auto g = [&](const VectorXd& b) {
            return oracles::logistic_loss_ld(inst.data.x, inst.data.y, b) + l2 * b.squaredNorm();
        };
        VectorXd grad = logistic_loss_value_gradient(inst.data, beta).gradient;
        grad += 2.0 * l2 * beta;
        worst_g = std::max(worst_g, relative_error(grad, oracles::central_difference(g, beta, 1e-6)));
    }
    return {{"grad TV_mu vs central differences (20 draws)", 1e-5, worst_tv},
            {"grad loss+l2 vs central differences (20 draws)", 1e-5, worst_g}};
}

std::vector<CheckLine> suite_bounds(std::uint64_t seed)
{
    // Observed value is the worst violation; zero means the bound held.
    double violation = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        const auto inst = testing::random_instance({5, 4, 3}, 2, 0.7, seed + k);
        const GradientOperator op(inst.volume);
        const VectorXd beta = testing::random_vector(inst.volume.size(), seed + 5000 + k) *
                              std::pow(10.0, static_cast<double>(k % 5) - 3.0);
        const double mu = std::pow(10.0, -static_cast<double>(k % 7));
        const double gap = tv_exact(op, beta) - tv_smoothed(op, beta, SmoothingParam(mu));
        const double upper = mu * static_cast<double>(inst.volume.size()) / 2.0;
        const double slack = 1e-12 * std::max(1.0, tv_exact(op, beta));
        violation = std::max({violation, -gap - slack, gap - upper - slack});
    }
    return {{"0 <= TV - TV_mu <= mu*p/2 (100 draws)", 0.0, std::max(violation, 0.0)}};
}

std::vector<CheckLine> suite_oracles(std::uint64_t seed)
{
    std::vector<CheckLine> lines;

    const auto inst = testing::random_instance({3, 3, 3}, 30, 0.9, seed);
    const GradientOperator op(inst.volume);
    const Eigen::MatrixXd dense = oracles::dense_gradient_operator(inst.volume);
    lines.push_back({"sparse operator vs dense rebuild", 0.0,
                     (Eigen::MatrixXd(op.matrix()) - dense).cwiseAbs().maxCoeff()});
    const double svd = oracles::dense_spectral_norm(dense);
    lines.push_back({"power-iteration |A| vs SVD (relative)", 1e-5,
                     std::abs(op.spectral_norm() - svd) / svd});

    FistaConfig cfg;
    cfg.max_iter = 200000;
    cfg.tol = 1e-12;
    const double l0 = smooth_part_lipschitz(inst.data, 0.0, data_spectral_norm(inst.data));
    const auto p = inst.volume.size();
    {
        const PenaltyWeights w{0.0, 0.05, 0.0};
        cfg.step_size = fista_step_size(l0);
        const auto fit = fista_run_elastic_net(inst.data, w, VectorXd::Zero(p), cfg);
        const VectorXd ref = oracles::cd_logistic_elastic_net(inst.data.x, inst.data.y, w.l1, w.l2);
        lines.push_back({"lasso vs coordinate descent (max abs)", 1e-5,
                         (fit.beta - ref).cwiseAbs().maxCoeff()});
    }
    {
        const PenaltyWeights w{0.1, 0.0, 0.0};
        cfg.step_size = fista_step_size(l0 + 2.0 * w.l2);
        const auto fit = fista_run_elastic_net(inst.data, w, VectorXd::Zero(p), cfg);
        const VectorXd ref = oracles::newton_l2_logistic(inst.data.x, inst.data.y, w.l2);
        lines.push_back({"ridge vs Newton (max abs)", 1e-5, (fit.beta - ref).cwiseAbs().maxCoeff()});
    }
    {
        const PenaltyWeights w{0.009, 0.009, 0.012};
        const oracles::SmoothedProblem prob{inst.data.x, inst.data.y, dense, w.l2, w.l1, w.tv};
        const VectorXd ref = oracles::primal_dual_reference(prob, VectorXd::Zero(p), 200000);
        FistaConfig inner;
        inner.max_iter = 100000;
        inner.tol = 1e-12;
        const auto fit = conesta_fit(inst.data, op, w, init_beta(p, InitMode::random_unit, seed), 1e-6,
                                     inner, seed);
        const double gap = objective_exact(inst.data, op, w, fit.beta) -
                           objective_exact(inst.data, op, w, ref);
        lines.push_back({"continuation vs primal-dual reference (f gap)", 1e-4, std::abs(gap)});
    }
    return lines;
}

} // namespace

int cmd_check(const CheckArgs& args)
{
    std::vector<CheckLine> lines;
    if (args.suite == "gradients") lines = suite_gradients(args.seed);
    else if (args.suite == "bounds") lines = suite_bounds(args.seed);
    else if (args.suite == "oracles") lines = suite_oracles(args.seed);
    else throw InvalidArgument("unknown suite '" + args.suite + "'");

    bool ok = true;
    for (const auto& l : lines) {
        std::printf("%-50s tol=%-9.3g observed=%-12.4g %s\n", l.name.c_str(), l.tolerance, l.observed,
                    l.pass() ? "PASS" : "FAIL");
        ok = ok && l.pass();
    }
    return ok ? kExitOk : kExitFailure;
}

} // namespace conesta::cli
