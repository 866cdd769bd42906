#include "conesta/penalties.hpp"

#include <cmath>
#include <string>

#include "conesta/error.hpp"

namespace conesta {

namespace {

void check_length(const GradientOperator& op, const Eigen::VectorXd& beta, const char* who)
{
    if (static_cast<std::size_t>(beta.size()) != op.groups()) {
        throw InvalidArgument(std::string(who) + ": expected vector of length " +
                              std::to_string(op.groups()) + ", got " +
                              std::to_string(beta.size()));
    }
}

double smoothed_group_value(double r, double mu)
{
    if (r <= mu) return r * (r / mu) * 0.5;
    return r - 0.5 * mu;
}

} // namespace

void PenaltyWeights::validate() const
{
    for (double w : {l2, l1, tv}) {
        if (!std::isfinite(w) || w < 0.0) {
            throw InvalidArgument("penalty weights must be finite and nonnegative");
        }
    }
}

SmoothingParam::SmoothingParam(double mu) : mu_(mu)
{
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw InvalidArgument("smoothing parameter must be positive and finite");
    }
}

double tv_exact(const GradientOperator& op, const Eigen::VectorXd& beta)
{
    check_length(op, beta, "tv_exact");
    const Eigen::VectorXd grad = op.apply(beta);
    double total = 0.0;
    for (Eigen::Index i = 0; i < grad.size(); i += 3) {
        total += grad.segment<3>(i).norm();
    }
    return total;
}

Eigen::VectorXd project_dual(Eigen::VectorXd alpha)
{
    if (alpha.size() % 3 != 0) {
        throw InvalidArgument("project_dual: length must be a multiple of 3");
    }
    for (Eigen::Index i = 0; i < alpha.size(); i += 3) {
        const double r = alpha.segment<3>(i).norm();
        if (r > 1.0) alpha.segment<3>(i) /= r;
    }
    return alpha;
}

double tv_smoothed(const GradientOperator& op, const Eigen::VectorXd& beta, SmoothingParam mu)
{
    check_length(op, beta, "tv_smoothed");
    const Eigen::VectorXd grad = op.apply(beta);
    double total = 0.0;
    for (Eigen::Index i = 0; i < grad.size(); i += 3) {
        total += smoothed_group_value(grad.segment<3>(i).norm(), mu.value());
    }
    return total;
}

Eigen::VectorXd tv_smoothed_gradient(const GradientOperator& op, const Eigen::VectorXd& beta,
                                     SmoothingParam mu)
{
    check_length(op, beta, "tv_smoothed_gradient");
    return op.apply_transpose(project_dual(op.apply(beta) / mu.value()));
}

ValueGradient tv_smoothed_value_gradient(const GradientOperator& op, const Eigen::VectorXd& beta,
                                         SmoothingParam mu)
{
    check_length(op, beta, "tv_smoothed_value_gradient");
    const double m = mu.value();
    Eigen::VectorXd alpha = op.apply(beta);
    double total = 0.0;
    for (Eigen::Index i = 0; i < alpha.size(); i += 3) {
        auto group = alpha.segment<3>(i);
        const double r = group.norm();
        total += smoothed_group_value(r, m);
        // proj(a/μ): a/μ inside the ball, a/r on its boundary otherwise.
        if (r <= m) {
            group /= m;
        } else {
            group /= r;
        }
    }
    return {total, op.apply_transpose(alpha)};
}

Eigen::VectorXd prox_l1(const Eigen::VectorXd& x, double threshold)
{
    if (!(threshold >= 0.0)) {
        throw InvalidArgument("prox_l1: threshold must be nonnegative");
    }
    Eigen::VectorXd out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double v = x[j];
        if (v > threshold) {
            out[j] = v - threshold;
        } else if (v < -threshold) {
            out[j] = v + threshold;
        } else {
            out[j] = 0.0;
        }
    }
    return out;
}

ValueGradient l2_value_gradient(const Eigen::VectorXd& beta, double l2)
{
    if (!(l2 >= 0.0)) {
        throw InvalidArgument("l2 weight must be nonnegative");
    }
    return {l2 * beta.squaredNorm(), 2.0 * l2 * beta};
}

} // namespace conesta
