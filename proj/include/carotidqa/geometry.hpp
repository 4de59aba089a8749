#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace cqa {

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// In-plane point plus integer slice index; anchors patches and contours.
struct Center {
    double x = 0.0;
    double y = 0.0;
    int z = 0;
    Vec2 xy() const { return {x, y}; }
};

/// Ellipse centered at an external point, semi-axes a >= b in voxels,
/// rotated by phi radians (major axis direction).
struct Ellipse {
    double a = 1.0;
    double b = 1.0;
    double phi = 0.0;
};

/// Radius of the ellipse boundary measured from its own center at polar
/// angle gamma: r(gamma) = a*b / sqrt((b*cos(g-phi))^2 + (a*sin(g-phi))^2).
inline double ellipse_radius(const Ellipse& e, double gamma) {
    const double c = std::cos(gamma - e.phi);
    const double s = std::sin(gamma - e.phi);
    return (e.a * e.b) / std::sqrt(e.b * e.b * c * c + e.a * e.a * s * s);
}

/// Implicit value q(p) with q<1 inside, q==1 on the boundary.
inline double ellipse_implicit(const Ellipse& e, Vec2 center, Vec2 p) {
    const double dx = p.x - center.x;
    const double dy = p.y - center.y;
    const double c = std::cos(e.phi);
    const double s = std::sin(e.phi);
    const double u = c * dx + s * dy;
    const double v = -s * dx + c * dy;
    return (u * u) / (e.a * e.a) + (v * v) / (e.b * e.b);
}

inline bool ellipse_contains(const Ellipse& e, Vec2 center, Vec2 p) {
    return ellipse_implicit(e, center, p) < 1.0;
}

/// Distance t > 0 from an interior point `origin` to the ellipse boundary
/// along direction theta. Solves the ray/ellipse quadratic; the interior
/// precondition guarantees exactly one positive root.
inline double ray_ellipse_distance(const Ellipse& e, Vec2 center, Vec2 origin, double theta) {
    const double c = std::cos(e.phi);
    const double s = std::sin(e.phi);
    const double dx = std::cos(theta);
    const double dy = std::sin(theta);
    // rotate ray and offset into the ellipse frame
    const double ux = c * dx + s * dy;
    const double uy = -s * dx + c * dy;
    const double wx = c * (origin.x - center.x) + s * (origin.y - center.y);
    const double wy = -s * (origin.x - center.x) + c * (origin.y - center.y);
    const double A = (ux * ux) / (e.a * e.a) + (uy * uy) / (e.b * e.b);
    const double B = 2.0 * (wx * ux / (e.a * e.a) + wy * uy / (e.b * e.b));
    const double C = (wx * wx) / (e.a * e.a) + (wy * wy) / (e.b * e.b) - 1.0;
    const double disc = B * B - 4.0 * A * C;
    // C < 0 for interior origins, so disc > B^2 >= 0
    const double root = (-B + std::sqrt(disc)) / (2.0 * A);
    return root;
}

/// Closed simple polygon; vertex i connects to i+1 and the last wraps to 0.
struct Polygon {
    std::vector<Vec2> pts;
};

/// Even-odd (crossing-parity) point-in-polygon test.
inline bool point_in_polygon(const Polygon& poly, Vec2 p) {
    bool inside = false;
    const auto& v = poly.pts;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double xcross = (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x;
            if (p.x < xcross) inside = !inside;
        }
    }
    return inside;
}

/// Polygon approximation of an ellipse, sampled at n equally spaced angles.
inline Polygon ellipse_polygon(Vec2 center, const Ellipse& e, int n = 256) {
    Polygon poly;
    poly.pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double g = 2.0 * kPi * i / n;
        const double r = ellipse_radius(e, g);
        poly.pts.push_back({center.x + r * std::cos(g), center.y + r * std::sin(g)});
    }
    return poly;
}

/// Wrap an angle difference into (-pi, pi].
inline double wrap_angle(double d) {
    while (d > kPi) d -= 2.0 * kPi;
    while (d <= -kPi) d += 2.0 * kPi;
    return d;
}

} // namespace cqa
