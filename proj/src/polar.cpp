#include "carotidqa/polar.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "carotidqa/errors.hpp"

namespace cqa {

PolarPatch polar_transform(const Volume& v, Center center) {
    const int s_lo = center.z + PolarGrid::slice_offset_min;
    const int s_hi = center.z - PolarGrid::slice_offset_min;
    if (s_lo < 0 || s_hi >= v.nz) {
        throw OutOfBounds("polar_transform: slices [" + std::to_string(s_lo) + "," +
                          std::to_string(s_hi) + "] outside volume of nz=" + std::to_string(v.nz));
    }
    PolarPatch patch;
    patch.center = center;
    patch.samples.resize(static_cast<std::size_t>(PolarGrid::n_angles) * PolarGrid::n_radii *
                         PolarGrid::n_slices);
    for (int a = 0; a < PolarGrid::n_angles; ++a) {
        const double theta = PolarGrid::angle(a);
        const double dx = std::cos(theta);
        const double dy = std::sin(theta);
        for (int k = 0; k < PolarGrid::n_radii; ++k) {
            const double r = PolarGrid::radius(k);
            const double x = center.x + r * dx;
            const double y = center.y + r * dy;
            for (int s = 0; s < PolarGrid::n_slices; ++s) {
                patch.at(a, k, s) =
                    static_cast<float>(sample_bilinear_clamped(v, x, y, s_lo + s));
            }
        }
    }
    return patch;
}

std::pair<Polygon, Polygon> contours_to_cartesian(const ContourPair& c) {
    Polygon lumen, wall;
    lumen.pts.reserve(PolarGrid::n_angles);
    wall.pts.reserve(PolarGrid::n_angles);
    for (int i = 0; i < PolarGrid::n_angles; ++i) {
        const double theta = PolarGrid::angle(i);
        const double dx = std::cos(theta);
        const double dy = std::sin(theta);
        lumen.pts.push_back({c.center.x + c.lumen_radii[i] * dx, c.center.y + c.lumen_radii[i] * dy});
        wall.pts.push_back({c.center.x + c.outer_radius(i) * dx, c.center.y + c.outer_radius(i) * dy});
    }
    return {std::move(lumen), std::move(wall)};
}

void write_contour_json(const ContourPair& c, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["center"] = {c.center.x, c.center.y, c.center.z};
    j["lumen_radii"] = c.lumen_radii;
    j["wall_widths"] = c.wall_widths;
    std::ofstream os(path);
    if (!os) throw FormatError("write_contour_json: cannot open " + path.string());
    os << j.dump(2) << "\n";
}

ContourPair read_contour_json(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("read_contour_json: cannot open " + path.string());
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("read_contour_json: " + path.string() + ": " + e.what());
    }
    ContourPair c;
    c.center = {j.at("center")[0].get<double>(), j.at("center")[1].get<double>(),
                j.at("center")[2].get<int>()};
    const auto& lr = j.at("lumen_radii");
    const auto& ww = j.at("wall_widths");
    if (lr.size() != PolarGrid::n_angles || ww.size() != PolarGrid::n_angles) {
        throw FormatError("read_contour_json: expected 31 radii and widths in " + path.string());
    }
    for (int i = 0; i < PolarGrid::n_angles; ++i) {
        c.lumen_radii[i] = lr[i].get<double>();
        c.wall_widths[i] = ww[i].get<double>();
    }
    return c;
}

} // namespace cqa
