#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "conesta/power_iteration.hpp"

namespace conesta {

struct Dims {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::size_t nz = 0;

    std::size_t total() const noexcept { return nx * ny * nz; }
    bool operator==(const Dims&) const = default;
};

struct Voxel {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t z = 0;

    bool operator==(const Voxel&) const = default;
};

/// A 3D grid plus a boolean mask. In-mask voxels are numbered 0..p-1 in
/// x-fastest grid order; that numbering is the column order of X and β.
class MaskedVolume {
public:
    /// `mask` holds nx·ny·nz bytes in x-fastest order, nonzero meaning in-mask.
    MaskedVolume(Dims dims, std::vector<std::uint8_t> mask);

    static MaskedVolume full(Dims dims);

    const Dims& dims() const noexcept { return dims_; }
    /// Number of in-mask voxels (p).
    std::size_t size() const noexcept { return voxels_.size(); }
    /// Normalized 0/1 mask bytes in x-fastest order.
    const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }

    /// True when v lies inside the grid (the mask is not consulted).
    bool contains(const Voxel& v) const noexcept;
    std::size_t grid_offset(const Voxel& v) const noexcept;
    /// Linear index of an in-mask voxel; empty when outside the grid or the mask.
    std::optional<std::size_t> index_of(const Voxel& v) const noexcept;
    const Voxel& voxel_of(std::size_t index) const;

    bool operator==(const MaskedVolume& other) const
    {
        return dims_ == other.dims_ && mask_ == other.mask_;
    }

private:
    Dims dims_;
    std::vector<std::uint8_t> mask_;
    std::vector<std::int64_t> grid_to_index_;
    std::vector<Voxel> voxels_;
};

/// Masked 3D forward-difference operator A (3p × p).
///
/// Rows 3i, 3i+1, 3i+2 hold the x, y and z differences at voxel i:
/// β[next] − β[i]. A row is zero when the forward neighbor is outside the
/// grid or the mask. Immutable once built; apply and apply_transpose are safe
/// to call concurrently.
class GradientOperator {
public:
    using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

    explicit GradientOperator(const MaskedVolume& vol, const PowerIterationOptions& opts = {});

    /// Number of voxel groups (p).
    std::size_t groups() const noexcept { return groups_; }
    std::size_t rows() const noexcept { return 3 * groups_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& beta) const;
    Eigen::VectorXd apply_transpose(const Eigen::VectorXd& alpha) const;

    /// ‖A‖₂ as estimated by power iteration at construction.
    double spectral_norm() const noexcept { return spectral_norm_; }

    const SparseMatrix& matrix() const noexcept { return a_; }

private:
    std::size_t groups_ = 0;
    SparseMatrix a_;
    double spectral_norm_ = 0.0;
};

GradientOperator build_operator(const MaskedVolume& vol);

/// Re-estimates ‖A‖₂ with explicit power-iteration settings.
double estimate_spectral_norm(const GradientOperator& op, const PowerIterationOptions& opts = {});

} // namespace conesta
