#pragma once

#include <string>

#include <Eigen/Core>

#include "conesta/penalties.hpp"
#include "conesta/power_iteration.hpp"

namespace conesta {

/// n samples of p masked, flattened voxels with binary labels.
struct Dataset {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    std::string label_name = "label";

    std::size_t samples() const noexcept { return static_cast<std::size_t>(x.rows()); }
    std::size_t features() const noexcept { return static_cast<std::size_t>(x.cols()); }

    /// n, p >= 1, y has n entries and every label is exactly 0 or 1.
    void validate() const;

    bool operator==(const Dataset& other) const
    {
        return label_name == other.label_name && x.rows() == other.x.rows() &&
               x.cols() == other.x.cols() && y.size() == other.y.size() && x == other.x &&
               y == other.y;
    }
};

/// Per-column affine transform (x − mean) / scale fitted on training data.
/// Constant columns keep scale 1.
struct Standardization {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;

    static Standardization fit(const Eigen::MatrixXd& x);
    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;

    bool operator==(const Standardization& o) const { return mean == o.mean && scale == o.scale; }
};

/// Overflow-safe log(1 + exp(m)).
double log1p_exp(double m) noexcept;

/// Overflow-safe logistic function 1/(1 + exp(−m)).
double sigmoid(double m) noexcept;

/// p(y = 1 | xᵢ) = σ(xᵢᵀβ) for every row.
Eigen::VectorXd predict_proba(const Eigen::MatrixXd& x, const Eigen::VectorXd& beta);

/// Negative mean log-likelihood (1/n) Σ [log(1 + exp(xᵢᵀβ)) − yᵢ xᵢᵀβ] and
/// its gradient (1/n) Xᵀ(σ(Xβ) − y).
ValueGradient logistic_loss_value_gradient(const Dataset& data, const Eigen::VectorXd& beta);

double logistic_loss(const Dataset& data, const Eigen::VectorXd& beta);

/// Lipschitz constant of ∇g for g = logistic loss + l2‖β‖²:
/// 2·l2 + ‖X‖₂²/(4n).
double smooth_part_lipschitz(const Dataset& data, double l2, double spectral_norm_x);

/// ‖X‖₂ by power iteration.
double data_spectral_norm(const Dataset& data, const PowerIterationOptions& opts = {});

} // namespace conesta
