#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "carotidqa/geometry.hpp"
#include "carotidqa/volume.hpp"

namespace cqa {

/// Ground-truth geometry of one annotated slice: concentric lumen/wall
/// ellipses about the true center. The wall strictly encloses the lumen
/// pointwise in every radial direction.
struct TruthSlice {
    int z = 0;
    Vec2 center;
    Ellipse lumen;
    Ellipse wall;
};

struct VesselTruth {
    std::string participant_id;
    std::string vessel_id; // "L"/"R" for the first two vessels
    std::vector<TruthSlice> slices;

    const TruthSlice* slice_at(int z) const;
};

struct IntensityModel {
    double lumen_mean = 0.1;
    double wall_mean = 0.7;
    double background_mean = 0.4;
    double texture_sigma = 0.05;     // additive gaussian texture
    double gradient_amplitude = 0.05; // smooth background plane
};

struct GeometryRanges {
    double lumen_semi_axis_min = 4.0;
    double lumen_semi_axis_max = 8.0;
    double axis_ratio_min = 0.75; // b/a lower bound
    double wall_thickness_min = 2.0;
    double wall_thickness_max = 4.0;
    double center_drift = 1.0; // max in-plane wobble of the centerline across z
    double margin = 5.0;       // required clearance between outer wall and volume border
};

struct CohortSpec {
    int n_participants = 1;
    int vessels_per_participant = 2;
    int annotated_slices_per_vessel = 4;
    int nx = 64;
    int ny = 64;
    int nz = 12;
    float sx = 0.6f;
    float sy = 0.6f;
    float sz = 2.0f;
    IntensityModel intensity;
    GeometryRanges geometry;
    std::uint64_t seed = 0;
};

struct Participant {
    std::string id;
    Volume volume;
    std::vector<VesselTruth> vessels;
};

/// Generate a deterministic synthetic cohort: black-blood-like volumes
/// (dark lumen, bright wall ring, textured background) with exact
/// elliptical ground truth. Throws GeometryOverflow when the requested
/// geometry cannot keep the margin inside the volume.
std::vector<Participant> generate_cohort(const CohortSpec& spec);

/// Ground-truth lumen radii and wall widths along n_angles equiangular rays
/// cast from `center` (which may be offset from the true center). Throws
/// CenterOutsideLumen unless the query center is strictly inside the lumen.
std::pair<std::vector<double>, std::vector<double>>
truth_radii(const VesselTruth& truth, int z, Vec2 center, int n_angles = 31);

void write_truth_json(const std::vector<VesselTruth>& vessels, const std::filesystem::path& path);
std::vector<VesselTruth> read_truth_json(const std::filesystem::path& path);

} // namespace cqa
