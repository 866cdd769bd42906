#include "conesta/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "conesta/error.hpp"

namespace conesta {

namespace {

// Mean over the (2r+1)-wide window along one axis, truncated at the borders.
void blur_axis(std::vector<double>& img, const Dims& d, std::size_t r, int axis)
{
    const std::size_t len = axis == 0 ? d.nx : axis == 1 ? d.ny : d.nz;
    const std::size_t stride = axis == 0 ? 1 : axis == 1 ? d.nx : d.nx * d.ny;
    std::vector<double> line(len);
    std::vector<double> prefix(len + 1);
    for (std::size_t off = 0; off < img.size(); ++off) {
        const std::size_t coord = (off / stride) % len;
        if (coord != 0) continue;  // visit each line once, from its first voxel
        for (std::size_t k = 0; k < len; ++k) line[k] = img[off + k * stride];
        prefix[0] = 0.0;
        for (std::size_t k = 0; k < len; ++k) prefix[k + 1] = prefix[k] + line[k];
        for (std::size_t k = 0; k < len; ++k) {
            const std::size_t lo = k >= r ? k - r : 0;
            const std::size_t hi = std::min(len - 1, k + r);
            img[off + k * stride] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
        }
    }
}

bool in_region(const Voxel& v, const PlantedRegion& region)
{
    const double dx = static_cast<double>(v.x) - static_cast<double>(region.center.x);
    const double dy = static_cast<double>(v.y) - static_cast<double>(region.center.y);
    const double dz = static_cast<double>(v.z) - static_cast<double>(region.center.z);
    return dx * dx + dy * dy + dz * dz <= region.radius * region.radius;
}

} // namespace

void SyntheticSpec::validate() const
{
    if (dims.nx == 0 || dims.ny == 0 || dims.nz == 0) {
        throw InvalidArgument("synthetic spec: dims must be positive");
    }
    if (n_per_class < 1) throw InvalidArgument("synthetic spec: n_per_class must be >= 1");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw InvalidArgument("synthetic spec: noise_sigma must be finite and nonnegative");
    }
    for (std::size_t r = 0; r < regions.size(); ++r) {
        const auto& reg = regions[r];
        if (reg.center.x >= dims.nx || reg.center.y >= dims.ny || reg.center.z >= dims.nz) {
            throw InvalidArgument("region " + std::to_string(r) + " lies outside the grid");
        }
        if (!(reg.radius >= 0.0) || !std::isfinite(reg.effect)) {
            throw InvalidArgument("region " + std::to_string(r) +
                                  " needs a nonnegative radius and finite effect");
        }
    }
}

GroundTruth GroundTruth::from_beta(Eigen::VectorXd beta_true)
{
    GroundTruth t;
    t.support.resize(static_cast<std::size_t>(beta_true.size()));
    for (Eigen::Index j = 0; j < beta_true.size(); ++j) {
        t.support[static_cast<std::size_t>(j)] = beta_true[j] != 0.0 ? 1 : 0;
    }
    t.beta_true = std::move(beta_true);
    return t;
}

std::size_t GroundTruth::support_size() const
{
    return static_cast<std::size_t>(std::count(support.begin(), support.end(), 1));
}

SyntheticData generate(const SyntheticSpec& spec, std::optional<MaskedVolume> mask)
{
    spec.validate();
    MaskedVolume vol = mask ? std::move(*mask) : MaskedVolume::full(spec.dims);
    if (!(vol.dims() == spec.dims)) {
        throw InvalidArgument("mask dimensions do not match the synthetic spec");
    }
    const std::size_t grid = spec.dims.total();
    const std::size_t p = vol.size();

    // Class-1 signal on the full grid.
    std::vector<double> signal(grid, 0.0);
    for (std::size_t z = 0; z < spec.dims.nz; ++z) {
        for (std::size_t y = 0; y < spec.dims.ny; ++y) {
            for (std::size_t x = 0; x < spec.dims.nx; ++x) {
                const Voxel v{x, y, z};
                for (const auto& reg : spec.regions) {
                    if (in_region(v, reg)) signal[vol.grid_offset(v)] += reg.effect;
                }
            }
        }
    }

    Eigen::VectorXd beta_true(static_cast<Eigen::Index>(p));
    for (std::size_t j = 0; j < p; ++j) {
        beta_true[static_cast<Eigen::Index>(j)] = signal[vol.grid_offset(vol.voxel_of(j))];
    }

    const std::size_t n = 2 * spec.n_per_class;
    std::mt19937_64 rng(spec.seed);
    std::vector<std::uint8_t> labels(n, 0);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(spec.n_per_class), labels.end(), 1);
    std::shuffle(labels.begin(), labels.end(), rng);

    std::normal_distribution<double> noise(0.0, 1.0);
    Dataset data;
    data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    data.y.resize(static_cast<Eigen::Index>(n));
    std::vector<double> img(grid);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t off = 0; off < grid; ++off) {
            img[off] = (labels[s] ? signal[off] : 0.0) + spec.noise_sigma * noise(rng);
        }
        if (spec.smoothness > 0) {
            for (int axis = 0; axis < 3; ++axis) blur_axis(img, spec.dims, spec.smoothness, axis);
        }
        for (std::size_t j = 0; j < p; ++j) {
            data.x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) =
                img[vol.grid_offset(vol.voxel_of(j))];
        }
        data.y[static_cast<Eigen::Index>(s)] = labels[s];
    }
    return {std::move(data), std::move(vol), GroundTruth::from_beta(std::move(beta_true))};
}

SplitIndices split_indices(const Eigen::VectorXd& labels, double train_fraction, std::uint64_t seed)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw InvalidArgument("train fraction must lie strictly between 0 and 1");
    }
    std::mt19937_64 rng(seed);
    SplitIndices out;
    for (double cls : {0.0, 1.0}) {
        std::vector<std::size_t> members;
        for (Eigen::Index i = 0; i < labels.size(); ++i) {
            if (labels[i] == cls) members.push_back(static_cast<std::size_t>(i));
        }
        if (members.size() < 2) {
            throw InvalidArgument("class " + std::to_string(static_cast<int>(cls)) +
                                  " has fewer than 2 samples");
        }
        std::shuffle(members.begin(), members.end(), rng);
        auto n_train = static_cast<std::size_t>(
            std::lround(train_fraction * static_cast<double>(members.size())));
        n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
        out.train.insert(out.train.end(), members.begin(),
                         members.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.test.insert(out.test.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train),
                        members.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& rows)
{
    Dataset out;
    out.label_name = data.label_name;
    out.x.resize(static_cast<Eigen::Index>(rows.size()), data.x.cols());
    out.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= data.samples()) throw InvalidArgument("subset: row index out of range");
        const auto src = static_cast<Eigen::Index>(rows[r]);
        out.x.row(static_cast<Eigen::Index>(r)) = data.x.row(src);
        out.y[static_cast<Eigen::Index>(r)] = data.y[src];
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, double train_fraction, std::uint64_t seed)
{
    data.validate();
    const SplitIndices idx = split_indices(data.y, train_fraction, seed);
    return {subset(data, idx.train), subset(data, idx.test)};
}

} // namespace conesta
