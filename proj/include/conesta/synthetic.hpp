#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "conesta/grid.hpp"
#include "conesta/model.hpp"

namespace conesta {

/// A sphere of voxels within `radius` (Euclidean, in voxel units) of `center`
/// whose intensity is raised by `effect` in class-1 samples.
struct PlantedRegion {
    Voxel center;
    double radius = 0.0;
    double effect = 0.0;
};

struct SyntheticSpec {
    Dims dims;
    std::size_t n_per_class = 0;
    std::vector<PlantedRegion> regions;
    double noise_sigma = 1.0;
    /// Box-blur half width in voxels; 0 disables blurring.
    std::size_t smoothness = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct GroundTruth {
    /// 1 where beta_true is nonzero.
    std::vector<std::uint8_t> support;
    Eigen::VectorXd beta_true;

    static GroundTruth from_beta(Eigen::VectorXd beta_true);
    std::size_t support_size() const;
};

struct SyntheticData {
    Dataset data;
    MaskedVolume volume;
    GroundTruth truth;
};

/// Draws n_per_class samples of each class. Every sample is a full-grid
/// image: class-1 samples get +effect inside the planted regions, then
/// i.i.d. N(0, σ²) noise is added and the image is box-blurred. The in-mask
/// voxels form the rows of X. Sample order is shuffled; the result is a
/// pure function of the spec (and mask).
SyntheticData generate(const SyntheticSpec& spec, std::optional<MaskedVolume> mask = std::nullopt);

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Stratified split: each class contributes round(train_fraction · n_class)
/// samples to train (clamped so both sides keep at least one). Indices are
/// returned in ascending order.
SplitIndices split_indices(const Eigen::VectorXd& labels, double train_fraction, std::uint64_t seed);

Dataset subset(const Dataset& data, const std::vector<std::size_t>& rows);

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed);

} // namespace conesta
