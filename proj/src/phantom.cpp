#include "carotidqa/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "carotidqa/errors.hpp"
#include "carotidqa/rng.hpp"

namespace cqa {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string vessel_name(int index) {
    if (index == 0) return "L";
    if (index == 1) return "R";
    return "V" + std::to_string(index);
}

struct VesselGeometry {
    Ellipse lumen;
    Ellipse wall;
    Vec2 base_center;
    Vec2 drift_dir;
    double drift_amp = 0.0;
    double drift_phase = 0.0;

    Vec2 center_at(int z, int nz) const {
        const double s = std::sin(2.0 * kPi * z / nz + drift_phase);
        return {base_center.x + drift_amp * drift_dir.x * s,
                base_center.y + drift_amp * drift_dir.y * s};
    }
};

void render_vessel(Volume& vol, const VesselGeometry& g, const IntensityModel& m) {
    const double reach = g.wall.a + 1.5;
    for (int z = 0; z < vol.nz; ++z) {
        const Vec2 c = g.center_at(z, vol.nz);
        const int x0 = std::max(0, static_cast<int>(std::floor(c.x - reach)));
        const int x1 = std::min(vol.nx - 1, static_cast<int>(std::ceil(c.x + reach)));
        const int y0 = std::max(0, static_cast<int>(std::floor(c.y - reach)));
        const int y1 = std::min(vol.ny - 1, static_cast<int>(std::ceil(c.y + reach)));
        for (int iy = y0; iy <= y1; ++iy) {
            for (int ix = x0; ix <= x1; ++ix) {
                const double dx = ix - c.x;
                const double dy = iy - c.y;
                const double r = std::hypot(dx, dy);
                const double gamma = std::atan2(dy, dx);
                // linear 1-voxel edge band approximates area-weighted coverage
                const double dw = r - ellipse_radius(g.wall, gamma);
                const double cov_w = std::clamp(0.5 - dw, 0.0, 1.0);
                if (cov_w <= 0.0) continue;
                const double dl = r - ellipse_radius(g.lumen, gamma);
                const double cov_l = std::clamp(0.5 - dl, 0.0, 1.0);
                double v = vol.at(ix, iy, z);
                v += (m.wall_mean - m.background_mean) * cov_w;
                v += (m.lumen_mean - m.wall_mean) * cov_l;
                vol.at(ix, iy, z) = static_cast<float>(v);
            }
        }
    }
}

} // namespace

const TruthSlice* VesselTruth::slice_at(int z) const {
    for (const auto& s : slices) {
        if (s.z == z) return &s;
    }
    return nullptr;
}

std::vector<Participant> generate_cohort(const CohortSpec& spec) {
    if (spec.n_participants < 1 || spec.vessels_per_participant < 1 ||
        spec.annotated_slices_per_vessel < 1) {
        throw ConfigError("generate_cohort: all cohort counts must be >= 1");
    }
    // annotated slices need 3 neighbours on both sides for the polar transform
    const int z_lo = 3;
    const int z_hi = spec.nz - 4;
    if (z_hi - z_lo + 1 < spec.annotated_slices_per_vessel) {
        throw GeometryOverflow("generate_cohort: volume too thin for " +
                               std::to_string(spec.annotated_slices_per_vessel) +
                               " annotated slices (nz=" + std::to_string(spec.nz) + ")");
    }

    std::vector<Participant> cohort;
    cohort.reserve(static_cast<std::size_t>(spec.n_participants));
    for (int p = 0; p < spec.n_participants; ++p) {
        // per-participant stream: seed xor participant index, schedule-independent
        Rng rng(spec.seed ^ static_cast<std::uint64_t>(p));
        Participant part;
        part.id = (p < 10 ? "P0" : "P") + std::to_string(p);
        part.volume = Volume::filled(spec.nx, spec.ny, spec.nz, 0.0f, spec.sx, spec.sy, spec.sz);

        // smooth background plane
        const double grad_dir = rng.uniform(0.0, 2.0 * kPi);
        const double gx = std::cos(grad_dir), gy = std::sin(grad_dir);
        const double amp = spec.intensity.gradient_amplitude;
        for (int z = 0; z < spec.nz; ++z) {
            for (int y = 0; y < spec.ny; ++y) {
                for (int x = 0; x < spec.nx; ++x) {
                    const double u = (x / std::max(1.0, spec.nx - 1.0) - 0.5) * gx +
                                     (y / std::max(1.0, spec.ny - 1.0) - 0.5) * gy;
                    part.volume.at(x, y, z) =
                        static_cast<float>(spec.intensity.background_mean + amp * u);
                }
            }
        }

        // one vertical strip per vessel keeps vessels disjoint
        const double strip_w = static_cast<double>(spec.nx) / spec.vessels_per_participant;
        for (int vi = 0; vi < spec.vessels_per_participant; ++vi) {
            const auto& G = spec.geometry;
            VesselGeometry g;
            g.lumen.a = rng.uniform(G.lumen_semi_axis_min, G.lumen_semi_axis_max);
            g.lumen.b = g.lumen.a * rng.uniform(G.axis_ratio_min, 1.0);
            g.lumen.phi = rng.uniform(0.0, kPi);
            const double t = rng.uniform(G.wall_thickness_min, G.wall_thickness_max);
            g.wall = Ellipse{g.lumen.a + t, g.lumen.b + t, g.lumen.phi};

            const double clearance = g.wall.a + G.margin + G.center_drift;
            const double strip_lo = strip_w * vi;
            const double strip_hi = strip_w * (vi + 1) - 1.0;
            const double x_lo = std::max(clearance, strip_lo + clearance * 0.5);
            const double x_hi = std::min(spec.nx - 1.0 - clearance, strip_hi - clearance * 0.5);
            const double y_lo = clearance;
            const double y_hi = spec.ny - 1.0 - clearance;
            if (x_lo > x_hi || y_lo > y_hi) {
                throw GeometryOverflow("generate_cohort: vessel with outer radius " +
                                       std::to_string(g.wall.a) +
                                       " cannot keep a " + std::to_string(G.margin) +
                                       "-voxel margin inside " + std::to_string(spec.nx) + "x" +
                                       std::to_string(spec.ny));
            }
            g.base_center = {rng.uniform(x_lo, x_hi), rng.uniform(y_lo, y_hi)};
            const double ddir = rng.uniform(0.0, 2.0 * kPi);
            g.drift_dir = {std::cos(ddir), std::sin(ddir)};
            g.drift_amp = rng.uniform(0.0, G.center_drift);
            g.drift_phase = rng.uniform(0.0, 2.0 * kPi);

            render_vessel(part.volume, g, spec.intensity);

            VesselTruth truth;
            truth.participant_id = part.id;
            truth.vessel_id = vessel_name(vi);
            const int n_ann = spec.annotated_slices_per_vessel;
            for (int k = 0; k < n_ann; ++k) {
                const int z = n_ann == 1
                                  ? (z_lo + z_hi) / 2
                                  : z_lo + static_cast<int>(std::lround(
                                               k * static_cast<double>(z_hi - z_lo) / (n_ann - 1)));
                TruthSlice s;
                s.z = z;
                s.center = g.center_at(z, spec.nz);
                s.lumen = g.lumen;
                s.wall = g.wall;
                truth.slices.push_back(s);
            }
            part.vessels.push_back(std::move(truth));
        }

        if (spec.intensity.texture_sigma > 0.0) {
            for (auto& x : part.volume.data) {
                x = static_cast<float>(x + spec.intensity.texture_sigma * rng.gaussian());
            }
        }
        cohort.push_back(std::move(part));
    }
    return cohort;
}

std::pair<std::vector<double>, std::vector<double>>
truth_radii(const VesselTruth& truth, int z, Vec2 center, int n_angles) {
    const TruthSlice* s = truth.slice_at(z);
    if (s == nullptr) {
        throw OutOfBounds("truth_radii: no annotated slice z=" + std::to_string(z) + " for vessel " +
                          truth.vessel_id);
    }
    if (ellipse_implicit(s->lumen, s->center, center) >= 1.0) {
        throw CenterOutsideLumen("truth_radii: query center (" + std::to_string(center.x) + "," +
                                 std::to_string(center.y) + ") not strictly inside the lumen");
    }
    std::vector<double> radii(static_cast<std::size_t>(n_angles));
    std::vector<double> widths(static_cast<std::size_t>(n_angles));
    for (int i = 0; i < n_angles; ++i) {
        const double theta = 2.0 * kPi * i / n_angles;
        const double rl = ray_ellipse_distance(s->lumen, s->center, center, theta);
        const double rw = ray_ellipse_distance(s->wall, s->center, center, theta);
        radii[static_cast<std::size_t>(i)] = rl;
        widths[static_cast<std::size_t>(i)] = rw - rl;
    }
    return {std::move(radii), std::move(widths)};
}

namespace {

ordered_json ellipse_to_json(const Ellipse& e) {
    return ordered_json{{"a", e.a}, {"b", e.b}, {"phi", e.phi}};
}

Ellipse ellipse_from_json(const nlohmann::json& j) {
    return Ellipse{j.at("a").get<double>(), j.at("b").get<double>(), j.at("phi").get<double>()};
}

} // namespace

void write_truth_json(const std::vector<VesselTruth>& vessels, const std::filesystem::path& path) {
    ordered_json root = ordered_json::array();
    for (const auto& v : vessels) {
        ordered_json slices = ordered_json::array();
        for (const auto& s : v.slices) {
            slices.push_back(ordered_json{{"z", s.z},
                                          {"center", {s.center.x, s.center.y}},
                                          {"lumen", ellipse_to_json(s.lumen)},
                                          {"wall", ellipse_to_json(s.wall)}});
        }
        root.push_back(ordered_json{
            {"participant_id", v.participant_id}, {"vessel_id", v.vessel_id}, {"slices", slices}});
    }
    std::ofstream os(path);
    if (!os) throw FormatError("write_truth_json: cannot open " + path.string());
    os << root.dump(2) << "\n";
}

std::vector<VesselTruth> read_truth_json(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("read_truth_json: cannot open " + path.string());
    nlohmann::json root;
    try {
        is >> root;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("read_truth_json: " + path.string() + ": " + e.what());
    }
    std::vector<VesselTruth> vessels;
    for (const auto& jv : root) {
        VesselTruth v;
        v.participant_id = jv.at("participant_id").get<std::string>();
        v.vessel_id = jv.at("vessel_id").get<std::string>();
        for (const auto& js : jv.at("slices")) {
            TruthSlice s;
            s.z = js.at("z").get<int>();
            s.center = {js.at("center")[0].get<double>(), js.at("center")[1].get<double>()};
            s.lumen = ellipse_from_json(js.at("lumen"));
            s.wall = ellipse_from_json(js.at("wall"));
            v.slices.push_back(s);
        }
        vessels.push_back(std::move(v));
    }
    return vessels;
}

} // namespace cqa
