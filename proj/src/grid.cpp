#include "conesta/grid.hpp"

#include <array>
#include <string>

#include "conesta/error.hpp"

namespace conesta {

MaskedVolume::MaskedVolume(Dims dims, std::vector<std::uint8_t> mask)
    : dims_(dims), mask_(std::move(mask))
{
    if (dims_.nx == 0 || dims_.ny == 0 || dims_.nz == 0) {
        throw InvalidArgument("volume dimensions must be positive");
    }
    if (mask_.size() != dims_.total()) {
        throw InvalidArgument("mask has " + std::to_string(mask_.size()) + " entries, grid has " +
                              std::to_string(dims_.total()));
    }
    grid_to_index_.assign(mask_.size(), -1);
    for (std::size_t z = 0; z < dims_.nz; ++z) {
        for (std::size_t y = 0; y < dims_.ny; ++y) {
            for (std::size_t x = 0; x < dims_.nx; ++x) {
                const Voxel v{x, y, z};
                const std::size_t off = grid_offset(v);
                mask_[off] = mask_[off] != 0 ? 1 : 0;
                if (mask_[off]) {
                    grid_to_index_[off] = static_cast<std::int64_t>(voxels_.size());
                    voxels_.push_back(v);
                }
            }
        }
    }
    if (voxels_.empty()) {
        throw InvalidArgument("empty mask");
    }
}

MaskedVolume MaskedVolume::full(Dims dims)
{
    return MaskedVolume(dims, std::vector<std::uint8_t>(dims.total(), 1));
}

bool MaskedVolume::contains(const Voxel& v) const noexcept
{
    return v.x < dims_.nx && v.y < dims_.ny && v.z < dims_.nz;
}

std::size_t MaskedVolume::grid_offset(const Voxel& v) const noexcept
{
    return v.x + dims_.nx * (v.y + dims_.ny * v.z);
}

std::optional<std::size_t> MaskedVolume::index_of(const Voxel& v) const noexcept
{
    if (!contains(v)) return std::nullopt;
    const auto idx = grid_to_index_[grid_offset(v)];
    if (idx < 0) return std::nullopt;
    return static_cast<std::size_t>(idx);
}

const Voxel& MaskedVolume::voxel_of(std::size_t index) const
{
    if (index >= voxels_.size()) {
        throw InvalidArgument("voxel index " + std::to_string(index) + " out of range");
    }
    return voxels_[index];
}

GradientOperator::GradientOperator(const MaskedVolume& vol, const PowerIterationOptions& opts)
    : groups_(vol.size())
{
    const auto p = static_cast<Eigen::Index>(groups_);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(6 * groups_);
    for (std::size_t i = 0; i < groups_; ++i) {
        const Voxel& v = vol.voxel_of(i);
        const std::array<Voxel, 3> next{Voxel{v.x + 1, v.y, v.z}, Voxel{v.x, v.y + 1, v.z},
                                        Voxel{v.x, v.y, v.z + 1}};
        for (std::size_t axis = 0; axis < 3; ++axis) {
            const auto j = vol.index_of(next[axis]);
            if (!j) continue;
            const auto row = static_cast<Eigen::Index>(3 * i + axis);
            triplets.emplace_back(row, static_cast<Eigen::Index>(i), -1.0);
            triplets.emplace_back(row, static_cast<Eigen::Index>(*j), 1.0);
        }
    }
    a_.resize(3 * p, p);
    a_.setFromTriplets(triplets.begin(), triplets.end());
    a_.makeCompressed();
    spectral_norm_ = estimate_spectral_norm(*this, opts);
}

Eigen::VectorXd GradientOperator::apply(const Eigen::VectorXd& beta) const
{
    if (static_cast<std::size_t>(beta.size()) != groups_) {
        throw InvalidArgument("apply: expected vector of length " + std::to_string(groups_) +
                              ", got " + std::to_string(beta.size()));
    }
    return a_ * beta;
}

Eigen::VectorXd GradientOperator::apply_transpose(const Eigen::VectorXd& alpha) const
{
    if (static_cast<std::size_t>(alpha.size()) != rows()) {
        throw InvalidArgument("apply_transpose: expected vector of length " +
                              std::to_string(rows()) + ", got " + std::to_string(alpha.size()));
    }
    return a_.transpose() * alpha;
}

GradientOperator build_operator(const MaskedVolume& vol)
{
    return GradientOperator(vol);
}

double estimate_spectral_norm(const GradientOperator& op, const PowerIterationOptions& opts)
{
    const auto& a = op.matrix();
    return spectral_norm_power(
        op.groups(),
        [&a](const Eigen::VectorXd& v) -> Eigen::VectorXd { return a.transpose() * (a * v); },
        opts);
}

} // namespace conesta
