#include "carotidqa/volume.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "carotidqa/rng.hpp"
#include "carotidqa/stats.hpp"

namespace cqa {

Volume Volume::filled(int nx, int ny, int nz, float value, float sx, float sy, float sz) {
    Volume v;
    v.nx = nx;
    v.ny = ny;
    v.nz = nz;
    v.sx = sx;
    v.sy = sy;
    v.sz = sz;
    v.data.assign(static_cast<std::size_t>(nx) * ny * nz, value);
    return v;
}

Volume preprocess(const Volume& v) {
    std::vector<double> sorted(v.data.begin(), v.data.end());
    std::sort(sorted.begin(), sorted.end());
    const double p5 = quantile_sorted(sorted, 0.05);
    const double p95 = quantile_sorted(sorted, 0.95);
    if (!(p95 > p5)) {
        throw DegenerateIntensity("preprocess: 5th and 95th percentiles coincide (" +
                                  std::to_string(p5) + ")");
    }
    Volume out = v;
    const double scale = 1.0 / (p95 - p5);
    for (auto& x : out.data) {
        x = static_cast<float>((static_cast<double>(x) - p5) * scale);
    }
    return out;
}

Volume add_noise(const Volume& v, const NoiseSpec& spec) {
    Volume out = v;
    Rng rng(spec.seed);
    const double a = spec.alpha;
    for (auto& x : out.data) {
        const double g = rng.gaussian();
        x = static_cast<float>(a * g + (1.0 - a) * static_cast<double>(x));
    }
    return out;
}

namespace {

double bilinear_at(const Volume& v, double x, double y, int z) {
    int x0 = static_cast<int>(std::floor(x));
    int y0 = static_cast<int>(std::floor(y));
    x0 = std::clamp(x0, 0, std::max(v.nx - 2, 0));
    y0 = std::clamp(y0, 0, std::max(v.ny - 2, 0));
    const int x1 = std::min(x0 + 1, v.nx - 1);
    const int y1 = std::min(y0 + 1, v.ny - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double v00 = v.at(x0, y0, z);
    const double v10 = v.at(x1, y0, z);
    const double v01 = v.at(x0, y1, z);
    const double v11 = v.at(x1, y1, z);
    return v00 * (1.0 - fx) * (1.0 - fy) + v10 * fx * (1.0 - fy) + v01 * (1.0 - fx) * fy +
           v11 * fx * fy;
}

} // namespace

double sample_bilinear(const Volume& v, double x, double y, int z) {
    if (z < 0 || z >= v.nz) {
        throw OutOfBounds("sample_bilinear: slice " + std::to_string(z) + " outside [0," +
                          std::to_string(v.nz) + ")");
    }
    if (x < 0.0 || x > v.nx - 1 || y < 0.0 || y > v.ny - 1) {
        throw OutOfBounds("sample_bilinear: (" + std::to_string(x) + "," + std::to_string(y) +
                          ") outside in-plane bounds");
    }
    return bilinear_at(v, x, y, z);
}

double sample_bilinear_clamped(const Volume& v, double x, double y, int z) {
    if (z < 0 || z >= v.nz) {
        throw OutOfBounds("sample_bilinear_clamped: slice " + std::to_string(z) + " outside [0," +
                          std::to_string(v.nz) + ")");
    }
    x = std::clamp(x, 0.0, static_cast<double>(v.nx - 1));
    y = std::clamp(y, 0.0, static_cast<double>(v.ny - 1));
    return bilinear_at(v, x, y, z);
}

namespace {

void put_u32(std::ostream& os, std::uint32_t x) {
    const unsigned char b[4] = {static_cast<unsigned char>(x & 0xff),
                                static_cast<unsigned char>((x >> 8) & 0xff),
                                static_cast<unsigned char>((x >> 16) & 0xff),
                                static_cast<unsigned char>((x >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f32(std::ostream& os, float f) {
    std::uint32_t x;
    std::memcpy(&x, &f, 4);
    put_u32(os, x);
}

bool get_u32(std::istream& is, std::uint32_t& x) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    x = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
        (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    return true;
}

bool get_f32(std::istream& is, float& f) {
    std::uint32_t x;
    if (!get_u32(is, x)) return false;
    std::memcpy(&f, &x, 4);
    return true;
}

} // namespace

void write_volume(const Volume& v, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("write_volume: cannot open " + path.string());
    os.write("VOL1", 4);
    put_u32(os, static_cast<std::uint32_t>(v.nx));
    put_u32(os, static_cast<std::uint32_t>(v.ny));
    put_u32(os, static_cast<std::uint32_t>(v.nz));
    put_f32(os, v.sx);
    put_f32(os, v.sy);
    put_f32(os, v.sz);
    for (float x : v.data) put_f32(os, x);
    if (!os) throw FormatError("write_volume: short write to " + path.string());
}

Volume read_volume(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("read_volume: cannot open " + path.string());
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "VOL1", 4) != 0) {
        throw FormatError("read_volume: bad magic in " + path.string());
    }
    Volume v;
    std::uint32_t nx, ny, nz;
    if (!get_u32(is, nx) || !get_u32(is, ny) || !get_u32(is, nz) || !get_f32(is, v.sx) ||
        !get_f32(is, v.sy) || !get_f32(is, v.sz)) {
        throw FormatError("read_volume: truncated header in " + path.string());
    }
    v.nx = static_cast<int>(nx);
    v.ny = static_cast<int>(ny);
    v.nz = static_cast<int>(nz);
    const std::size_t n = static_cast<std::size_t>(nx) * ny * nz;
    v.data.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!get_f32(is, v.data[i])) {
            throw DimensionMismatch("read_volume: header declares " + std::to_string(n) +
                                    " voxels, payload has " + std::to_string(i));
        }
    }
    // trailing bytes mean the header undercounts the payload
    char extra;
    if (is.read(&extra, 1)) {
        throw DimensionMismatch("read_volume: payload longer than declared " + std::to_string(n) +
                                " voxels");
    }
    return v;
}

} // namespace cqa
