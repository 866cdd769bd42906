#include "conesta/objective.hpp"

namespace conesta {

double objective_elastic_net(const Dataset& data, const PenaltyWeights& weights,
                             const Eigen::VectorXd& beta)
{
    return logistic_loss(data, beta) + weights.l2 * beta.squaredNorm() +
           weights.l1 * beta.lpNorm<1>();
}

double objective_exact(const Dataset& data, const GradientOperator& op,
                       const PenaltyWeights& weights, const Eigen::VectorXd& beta)
{
    double value = objective_elastic_net(data, weights, beta);
    if (weights.tv != 0.0) value += weights.tv * tv_exact(op, beta);
    return value;
}

double objective_smoothed(const Dataset& data, const GradientOperator& op,
                          const PenaltyWeights& weights, const Eigen::VectorXd& beta,
                          SmoothingParam mu)
{
    double value = objective_elastic_net(data, weights, beta);
    if (weights.tv != 0.0) value += weights.tv * tv_smoothed(op, beta, mu);
    return value;
}

} // namespace conesta
