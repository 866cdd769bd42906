#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "conesta/continuation.hpp"
#include "conesta/error.hpp"
#include "conesta/grid.hpp"
#include "conesta/model.hpp"
#include "conesta/penalties.hpp"
#include "conesta/synthetic.hpp"

namespace conesta {

// Every file is one line of JSON header terminated by '\n', followed by a raw
// little-endian payload. Headers carry "format": "conesta/v1" and a "kind".
//
//   mask     {dims:[nx,ny,nz], order:"x-fastest", count:p}  + uint8[nx·ny·nz]
//   dataset  {n, p, label_name}                             + float64[n·p] (row-major) + uint8[n]
//   truth    {p}                                            + float64[p]
//   model    {p, weights, target_eps, seed, init, constants, runs, ...}
//                                                           + float64[p] β
//                                                           (+ float64[p] mean, float64[p] scale
//                                                              when "standardized" is true)

inline constexpr const char* kFormatTag = "conesta/v1";

enum class IoErrc {
    open_failed,
    corrupt_header,
    unsupported_version,
    truncated_payload,
    dimension_mismatch,
    invalid_payload,
};

const char* to_string(IoErrc code) noexcept;

class IoError : public Error {
public:
    IoError(IoErrc code, const std::string& detail)
        : Error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}

    IoErrc code() const noexcept { return code_; }

private:
    IoErrc code_;
};

/// Everything persisted by a fit.
struct ModelFile {
    FitResult fit;
    PenaltyWeights weights;
    double target_eps = 0.0;
    std::uint64_t seed = 0;
    InitMode init = InitMode::random_unit;
    std::optional<Standardization> standardization;
};

void write_volume(std::ostream& out, const MaskedVolume& vol);
MaskedVolume read_volume(std::istream& in);
void write_dataset(std::ostream& out, const Dataset& data);
Dataset read_dataset(std::istream& in);
void write_truth(std::ostream& out, const GroundTruth& truth);
GroundTruth read_truth(std::istream& in);
void write_model(std::ostream& out, const ModelFile& model);
ModelFile read_model(std::istream& in);

void write_volume(const std::filesystem::path& path, const MaskedVolume& vol);
MaskedVolume read_volume(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, const Dataset& data);
Dataset read_dataset(const std::filesystem::path& path);
void write_truth(const std::filesystem::path& path, const GroundTruth& truth);
GroundTruth read_truth(const std::filesystem::path& path);
void write_model(const std::filesystem::path& path, const ModelFile& model);
ModelFile read_model(const std::filesystem::path& path);

} // namespace conesta
