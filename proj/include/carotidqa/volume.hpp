#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "carotidqa/errors.hpp"

namespace cqa {

/// 3D scalar image in RAS orientation. Voxel (ix,iy,iz) sits at continuous
/// coordinate (ix,iy,iz); data is stored x-fastest as 32-bit floats.
/// Immutable by convention once built, so it is safe to share across threads.
struct Volume {
    int nx = 0;
    int ny = 0;
    int nz = 0;
    float sx = 1.0f; // spacing, mm/voxel; metadata only, geometry runs in voxel units
    float sy = 1.0f;
    float sz = 1.0f;
    std::vector<float> data;

    static Volume filled(int nx, int ny, int nz, float value = 0.0f,
                         float sx = 1.0f, float sy = 1.0f, float sz = 1.0f);

    std::size_t index(int ix, int iy, int iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(nx) *
                   (static_cast<std::size_t>(iy) + static_cast<std::size_t>(ny) * static_cast<std::size_t>(iz));
    }
    float at(int ix, int iy, int iz) const { return data[index(ix, iy, iz)]; }
    float& at(int ix, int iy, int iz) { return data[index(ix, iy, iz)]; }
    std::size_t voxel_count() const { return static_cast<std::size_t>(nx) * ny * nz; }
};

struct NoiseSpec {
    double alpha = 0.0; // noise level in [0,1]
    std::uint64_t seed = 0;
};

/// Rescale intensities so the 5th/95th percentiles map to 0/1. Percentiles
/// use linear interpolation on the sorted array (index = q*(N-1)); values
/// outside the band are not clamped.
Volume preprocess(const Volume& v);

/// out = alpha*g + (1-alpha)*v with g ~ N(0,1) per voxel, seeded.
Volume add_noise(const Volume& v, const NoiseSpec& spec);

/// Bilinear interpolation in the axial plane at integer slice z.
/// Throws OutOfBounds outside [0,nx-1]x[0,ny-1]x{0..nz-1}.
double sample_bilinear(const Volume& v, double x, double y, int z);

/// Same interpolation but x/y are clamped into bounds first; z stays hard.
double sample_bilinear_clamped(const Volume& v, double x, double y, int z);

/// VOL file format: "VOL1", LE u32 nx,ny,nz, LE f32 sx,sy,sz, then
/// nx*ny*nz LE f32 x-fastest. Round-trips are bitwise lossless.
Volume read_volume(const std::filesystem::path& path);
void write_volume(const Volume& v, const std::filesystem::path& path);

} // namespace cqa
