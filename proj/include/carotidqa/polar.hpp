#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "carotidqa/geometry.hpp"
#include "carotidqa/volume.hpp"

namespace cqa {

/// Fixed cylindrical sampling grid: 31 equiangular rays of 127 radial steps
/// on the centre slice and its three neighbours in both directions.
/// Ray i points along theta_i = 2*pi*i/31 (theta_0 = +x, counterclockwise);
/// radial sample k sits at distance k+1 voxels from the center.
struct PolarGrid {
    static constexpr int n_angles = 31;
    static constexpr int n_radii = 127;
    static constexpr int n_slices = 7;
    static constexpr double radial_step = 1.0;
    static constexpr int slice_offset_min = -3;

    static double angle(int i) { return 2.0 * kPi * i / n_angles; }
    static double radius(int k) { return radial_step * (k + 1); }
};

/// Cylindrical intensity sample of shape (angle, radius, slice) = (31,127,7).
struct PolarPatch {
    Center center;
    std::vector<float> samples; // layout: ((a * n_radii) + k) * n_slices + s

    static std::size_t index(int a, int k, int s) {
        return (static_cast<std::size_t>(a) * PolarGrid::n_radii + static_cast<std::size_t>(k)) *
                   PolarGrid::n_slices +
               static_cast<std::size_t>(s);
    }
    float at(int a, int k, int s) const { return samples[index(a, k, s)]; }
    float& at(int a, int k, int s) { return samples[index(a, k, s)]; }
};

/// Per-angle lumen radii and wall widths about a center: the canonical
/// 31x2 segmentation representation. All entries are positive.
struct ContourPair {
    Center center;
    std::array<double, PolarGrid::n_angles> lumen_radii{};
    std::array<double, PolarGrid::n_angles> wall_widths{};

    double outer_radius(int i) const { return lumen_radii[i] + wall_widths[i]; }
};

/// Cast the polar sampling grid from `center`. In-plane coordinates are
/// clamped to the volume border (offset-center sweeps must not crash near
/// edges); slices cz-3..cz+3 must exist or OutOfBounds is thrown.
PolarPatch polar_transform(const Volume& v, Center center);

/// Invert the polar representation: vertex i of each polygon lies at
/// center + r_i * (cos theta_i, sin theta_i).
std::pair<Polygon, Polygon> contours_to_cartesian(const ContourPair& c);

void write_contour_json(const ContourPair& c, const std::filesystem::path& path);
ContourPair read_contour_json(const std::filesystem::path& path);

} // namespace cqa
