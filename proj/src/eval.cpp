#include "conesta/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "conesta/error.hpp"

namespace conesta {

std::vector<int> labels_from_probabilities(const Eigen::VectorXd& proba, double threshold)
{
    std::vector<int> labels(static_cast<std::size_t>(proba.size()));
    for (Eigen::Index i = 0; i < proba.size(); ++i) {
        labels[static_cast<std::size_t>(i)] = proba[i] >= threshold ? 1 : 0;
    }
    return labels;
}

double balanced_classification_rate(double sensitivity, double specificity)
{
    return 0.5 * (sensitivity + specificity);
}

EvalMetrics compute_metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred)
{
    if (y_true.size() != y_pred.size()) {
        throw InvalidArgument("truth and prediction lengths differ");
    }
    EvalMetrics m;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
            throw InvalidArgument("labels must be 0 or 1");
        }
        if (t == 1) {
            (p == 1 ? m.counts.tp : m.counts.fn) += 1;
        } else {
            (p == 0 ? m.counts.tn : m.counts.fp) += 1;
        }
    }
    const std::size_t pos = m.counts.tp + m.counts.fn;
    const std::size_t neg = m.counts.tn + m.counts.fp;
    if (pos == 0 || neg == 0) throw InvalidArgument("degenerate test set");
    m.sensitivity = static_cast<double>(m.counts.tp) / static_cast<double>(pos);
    m.specificity = static_cast<double>(m.counts.tn) / static_cast<double>(neg);
    m.bcr = balanced_classification_rate(m.sensitivity, m.specificity);
    return m;
}

std::string_view to_string(McNemarKind kind)
{
    return kind == McNemarKind::exact ? "exact" : "chi2_cc";
}

double mcnemar_exact_p(std::size_t b, std::size_t c)
{
    const std::size_t n = b + c;
    if (n == 0) return 1.0;
    const std::size_t k = std::min(b, c);
    // Accumulate P[X = i] for i <= k in log space to stay finite for large n.
    const double log_half_n = static_cast<double>(n) * std::log(0.5);
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
    double tail = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
        const double log_choose = log_n_fact - std::lgamma(static_cast<double>(i) + 1.0) -
                                  std::lgamma(static_cast<double>(n - i) + 1.0);
        tail += std::exp(log_choose + log_half_n);
    }
    return std::min(1.0, 2.0 * tail);
}

double mcnemar_chi2_p(std::size_t b, std::size_t c)
{
    const std::size_t n = b + c;
    if (n == 0) return 1.0;
    const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c));
    const double corrected = std::max(0.0, diff - 1.0);
    const double stat = corrected * corrected / static_cast<double>(n);
    // Survival function of chi-square with one degree of freedom.
    return std::erfc(std::sqrt(0.5 * stat));
}

McNemarResult mcnemar_test(const std::vector<int>& y_true, const std::vector<int>& pred_a,
                           const std::vector<int>& pred_b)
{
    if (y_true.size() != pred_a.size() || y_true.size() != pred_b.size()) {
        throw InvalidArgument("McNemar: truth and prediction lengths differ");
    }
    McNemarResult r;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool a_ok = pred_a[i] == y_true[i];
        const bool b_ok = pred_b[i] == y_true[i];
        if (a_ok && !b_ok) ++r.b;
        if (!a_ok && b_ok) ++r.c;
    }
    if (r.b + r.c < kMcNemarExactLimit) {
        r.kind = McNemarKind::exact;
        r.p_value = mcnemar_exact_p(r.b, r.c);
    } else {
        r.kind = McNemarKind::chi2_cc;
        r.p_value = mcnemar_chi2_p(r.b, r.c);
    }
    return r;
}

Axis parse_axis(std::string_view name)
{
    if (name == "x") return Axis::x;
    if (name == "y") return Axis::y;
    if (name == "z") return Axis::z;
    throw InvalidArgument("axis must be x, y or z");
}

namespace {

struct SliceLayout {
    std::size_t rows;
    std::size_t cols;
};

SliceLayout layout(const Dims& d, Axis axis)
{
    switch (axis) {
    case Axis::x: return {d.nz, d.ny};
    case Axis::y: return {d.nz, d.nx};
    case Axis::z: return {d.ny, d.nx};
    }
    return {0, 0};
}

std::size_t axis_length(const Dims& d, Axis axis)
{
    return axis == Axis::x ? d.nx : axis == Axis::y ? d.ny : d.nz;
}

Voxel cell_voxel(Axis axis, std::size_t index, std::size_t row, std::size_t col)
{
    switch (axis) {
    case Axis::x: return {index, col, row};
    case Axis::y: return {col, index, row};
    case Axis::z: return {col, row, index};
    }
    return {};
}

} // namespace

std::vector<std::string> export_weight_slices(const Eigen::VectorXd& beta, const MaskedVolume& vol,
                                              Axis axis, const std::vector<std::size_t>& indices)
{
    if (static_cast<std::size_t>(beta.size()) != vol.size()) {
        throw InvalidArgument("beta length does not match the mask");
    }
    const SliceLayout lay = layout(vol.dims(), axis);
    std::vector<std::string> out;
    out.reserve(indices.size());
    char cell[32];
    for (const std::size_t index : indices) {
        if (index >= axis_length(vol.dims(), axis)) {
            throw InvalidArgument("slice index " + std::to_string(index) + " out of range");
        }
        std::string csv;
        for (std::size_t r = 0; r < lay.rows; ++r) {
            for (std::size_t c = 0; c < lay.cols; ++c) {
                if (c > 0) csv.push_back(',');
                if (const auto j = vol.index_of(cell_voxel(axis, index, r, c))) {
                    std::snprintf(cell, sizeof cell, "%.17g", beta[static_cast<Eigen::Index>(*j)]);
                    csv += cell;
                }
            }
            csv.push_back('\n');
        }
        out.push_back(std::move(csv));
    }
    return out;
}

void import_weight_slice(std::string_view csv, const MaskedVolume& vol, Axis axis,
                         std::size_t index, Eigen::VectorXd& beta)
{
    if (static_cast<std::size_t>(beta.size()) != vol.size()) {
        throw InvalidArgument("beta length does not match the mask");
    }
    if (index >= axis_length(vol.dims(), axis)) {
        throw InvalidArgument("slice index " + std::to_string(index) + " out of range");
    }
    const SliceLayout lay = layout(vol.dims(), axis);
    std::istringstream in{std::string(csv)};
    std::string line;
    for (std::size_t r = 0; r < lay.rows; ++r) {
        if (!std::getline(in, line)) throw InvalidArgument("slice CSV has too few rows");
        std::size_t c = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t end = line.find(',', start);
            const std::string cellv = line.substr(start, end - start);
            if (c >= lay.cols) throw InvalidArgument("slice CSV has too many columns");
            const auto j = vol.index_of(cell_voxel(axis, index, r, c));
            if (j.has_value() != !cellv.empty()) {
                throw InvalidArgument("slice CSV disagrees with the mask");
            }
            if (j) beta[static_cast<Eigen::Index>(*j)] = std::stod(cellv);
            ++c;
            if (end == std::string::npos) break;
            start = end + 1;
        }
        if (c != lay.cols) throw InvalidArgument("slice CSV has too few columns");
    }
}

SupportStats support_stats(const Eigen::VectorXd& beta, const GroundTruth& truth, double threshold)
{
    if (!(threshold >= 0.0)) throw InvalidArgument("support threshold must be nonnegative");
    if (truth.support.size() != static_cast<std::size_t>(beta.size())) {
        throw InvalidArgument("beta length does not match the ground truth");
    }
    SupportStats s;
    std::size_t overlap = 0;
    std::size_t true_size = 0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        const bool est = std::abs(beta[j]) > threshold;
        const bool tru = truth.support[static_cast<std::size_t>(j)] != 0;
        s.n_nonzero += est ? 1 : 0;
        true_size += tru ? 1 : 0;
        overlap += (est && tru) ? 1 : 0;
    }
    const std::size_t denom = s.n_nonzero + true_size;
    s.dice = denom == 0 ? 1.0 : 2.0 * static_cast<double>(overlap) / static_cast<double>(denom);
    return s;
}

} // namespace conesta
