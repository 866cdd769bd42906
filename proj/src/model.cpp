#include "conesta/model.hpp"

#include <cmath>
#include <string>

#include "conesta/error.hpp"

namespace conesta {

namespace {

void check_shapes(const Dataset& data, const Eigen::VectorXd& beta)
{
    if (data.x.cols() != beta.size()) {
        throw InvalidArgument("shape mismatch: X has " + std::to_string(data.x.cols()) +
                              " columns, beta has " + std::to_string(beta.size()) + " entries");
    }
    if (data.y.size() != data.x.rows()) {
        throw InvalidArgument("shape mismatch: X has " + std::to_string(data.x.rows()) +
                              " rows, y has " + std::to_string(data.y.size()) + " labels");
    }
}

} // namespace

void Dataset::validate() const
{
    if (x.rows() < 1 || x.cols() < 1) {
        throw InvalidArgument("dataset needs at least one sample and one feature");
    }
    if (y.size() != x.rows()) {
        throw InvalidArgument("label count does not match sample count");
    }
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] != 0.0 && y[i] != 1.0) {
            throw InvalidArgument("label " + std::to_string(i) + " is not 0 or 1");
        }
    }
}

Standardization Standardization::fit(const Eigen::MatrixXd& x)
{
    if (x.rows() < 1) throw InvalidArgument("cannot standardize an empty matrix");
    Standardization s;
    const auto n = static_cast<double>(x.rows());
    s.mean = x.colwise().mean().transpose();
    s.scale.resize(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double var = (x.col(j).array() - s.mean[j]).square().sum() / n;
        s.scale[j] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    return s;
}

Eigen::MatrixXd Standardization::apply(const Eigen::MatrixXd& x) const
{
    if (x.cols() != mean.size()) {
        throw InvalidArgument("standardization: column count mismatch");
    }
    return (x.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
}

double log1p_exp(double m) noexcept
{
    return std::max(m, 0.0) + std::log1p(std::exp(-std::abs(m)));
}

double sigmoid(double m) noexcept
{
    if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
    const double e = std::exp(m);
    return e / (1.0 + e);
}

Eigen::VectorXd predict_proba(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta)
{
    if (x.cols() != beta.size()) {
        throw InvalidArgument("shape mismatch: X has " + std::to_string(x.cols()) +
                              " columns, beta has " + std::to_string(beta.size()) + " entries");
    }
    const Eigen::VectorXd margin = x * beta;
    return margin.unaryExpr([](double m) { return sigmoid(m); });
}

ValueGradient logistic_loss_value_gradient(const Dataset& data, const Eigen::VectorXd& beta)
{
    check_shapes(data, beta);
    const auto n = static_cast<double>(data.x.rows());
    const Eigen::VectorXd margin = data.x * beta;
    Eigen::VectorXd residual(margin.size());
    double total = 0.0;
    for (Eigen::Index i = 0; i < margin.size(); ++i) {
        total += log1p_exp(margin[i]) - data.y[i] * margin[i];
        residual[i] = sigmoid(margin[i]) - data.y[i];
    }
    return {total / n, data.x.transpose() * residual / n};
}

double logistic_loss(const Dataset& data, const Eigen::VectorXd& beta)
{
    check_shapes(data, beta);
    const Eigen::VectorXd margin = data.x * beta;
    double total = 0.0;
    for (Eigen::Index i = 0; i < margin.size(); ++i) {
        total += log1p_exp(margin[i]) - data.y[i] * margin[i];
    }
    return total / static_cast<double>(data.x.rows());
}

double smooth_part_lipschitz(const Dataset& data, double l2, double spectral_norm_x)
{
    const auto n = static_cast<double>(data.samples());
    return 2.0 * l2 + spectral_norm_x * spectral_norm_x / (4.0 * n);
}

double data_spectral_norm(const Dataset& data, const PowerIterationOptions& opts)
{
    return spectral_norm_power(data.x, opts);
}

} // namespace conesta
