#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "conesta/grid.hpp"
#include "conesta/synthetic.hpp"

namespace conesta {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

struct EvalMetrics {
    double sensitivity = 0.0;  // recall of class 1
    double specificity = 0.0;  // recall of class 0
    double bcr = 0.0;
    ConfusionCounts counts;
};

/// Decision threshold turning probabilities into hard labels.
inline constexpr double kDecisionThreshold = 0.5;

std::vector<int> labels_from_probabilities(const Eigen::VectorXd& proba,
                                           double threshold = kDecisionThreshold);

/// Sensitivity, specificity and balanced classification rate. Needs both
/// classes in y_true.
EvalMetrics compute_metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred);

/// Balanced classification rate from its two recall rates.
double balanced_classification_rate(double sensitivity, double specificity);

enum class McNemarKind { exact, chi2_cc };

std::string_view to_string(McNemarKind kind);

struct McNemarResult {
    /// b: only A correct; c: only B correct.
    std::size_t b = 0;
    std::size_t c = 0;
    double p_value = 1.0;
    McNemarKind kind = McNemarKind::exact;
};

/// Discordant-pair count at which the exact test gives way to chi-square.
inline constexpr std::size_t kMcNemarExactLimit = 25;

/// Two-sided exact binomial McNemar p-value, min(1, 2·P[Bin(b+c, ½) <= min(b, c)]).
double mcnemar_exact_p(std::size_t b, std::size_t c);

/// Chi-square (1 dof) McNemar p-value with continuity correction,
/// statistic max(0, |b − c| − 1)² / (b + c).
double mcnemar_chi2_p(std::size_t b, std::size_t c);

/// Paired comparison of two classifiers on the same test set. Exact when
/// b + c < 25, chi-square otherwise; b + c = 0 gives p = 1.
McNemarResult mcnemar_test(const std::vector<int>& y_true, const std::vector<int>& pred_a,
                           const std::vector<int>& pred_b);

enum class Axis { x, y, z };

Axis parse_axis(std::string_view name);

/// One CSV per requested slice index along `axis`. For an x slice, rows run
/// over z and columns over y; for y, rows z and columns x; for z, rows y and
/// columns x. Values are printed with 17 significant digits; out-of-mask
/// cells are empty.
std::vector<std::string> export_weight_slices(const Eigen::VectorXd& beta, const MaskedVolume& vol,
                                              Axis axis, const std::vector<std::size_t>& indices);

/// Writes the cells of one exported slice back into `beta` (length p).
void import_weight_slice(std::string_view csv, const MaskedVolume& vol, Axis axis,
                         std::size_t index, Eigen::VectorXd& beta);

struct SupportStats {
    double dice = 0.0;
    std::size_t n_nonzero = 0;
};

/// Dice overlap between {j : |βⱼ| > threshold} and the true support. Two
/// empty supports give 1.
SupportStats support_stats(const Eigen::VectorXd& beta, const GroundTruth& truth, double threshold);

} // namespace conesta
