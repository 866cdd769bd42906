#include "conesta/power_iteration.hpp"

#include <cmath>
#include <random>

namespace conesta {

double spectral_norm_power(std::size_t cols, const NormalOperator& normal_op,
                           const PowerIterationOptions& opts)
{
    if (!(opts.tol > 0.0)) {
        throw InvalidArgument("power iteration: tol must be positive");
    }
    if (cols == 0) {
        throw InvalidArgument("power iteration: empty operator");
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd v(static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = unif(rng);
    v.normalize();

    double lambda = 0.0;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        Eigen::VectorXd w = normal_op(v);
        const double w_norm = w.norm();
        if (w_norm == 0.0) return 0.0;
        lambda = v.dot(w);
        const double residual = (w - lambda * v).norm();
        if (residual <= opts.tol * lambda) {
            return std::sqrt(lambda);
        }
        v = w / w_norm;
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                               " iterations",
                           v, std::sqrt(std::max(lambda, 0.0)));
}

double spectral_norm_power(const Eigen::MatrixXd& x, const PowerIterationOptions& opts)
{
    return spectral_norm_power(
        static_cast<std::size_t>(x.cols()),
        [&x](const Eigen::VectorXd& v) -> Eigen::VectorXd { return x.transpose() * (x * v); },
        opts);
}

} // namespace conesta
