#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pathbench/errors.hpp"

namespace pathbench {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;

    double norm() const { return std::sqrt(x * x + y * y); }
    double squared_norm() const { return x * x + y * y; }
    Vec2 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

enum class PathFamily { Sine, Circle, SquareWave, StraightLine };

std::string to_string(PathFamily f);
PathFamily path_family_from_string(const std::string& s);

// A member of a parametric path family over the abscissa w in [0, W].
// x1 is the amplitude in meters (radius for Circle); x2 the number of
// hemi-periods (unused for Circle and StraightLine).
struct PathParams {
    PathFamily family = PathFamily::StraightLine;
    double x1 = 0.0;
    int x2 = 0;
    double W = 100.0;

    bool operator==(const PathParams&) const = default;
};

// Manoeuvring box. The central box spans [0, W] along-track and
// [-R2/2, R2/2] cross-track; performance is scored only inside it. R1 is
// the declared along-track extent of the outer manoeuvring area, centred
// on the central box; R2 is shared by both boxes cross-track.
struct BoxGeometry {
    double W = 100.0;
    double R1 = 110.0;
    double R2 = 110.0;
    double l = 25.0; // straight segment length of the turn
    double r = 14.0; // turn semicircle radius

    void validate() const;
    bool in_central_box(Vec2 p) const {
        return p.x >= 0.0 && p.x <= W && std::abs(p.y) <= R2 / 2.0;
    }
};

enum class Phase : int { Approach = 0, Forward = 1, Turn = 2, Backward = 3 };

std::string to_string(Phase p);

// Ordered reference points handed to the controller as one block.
// `w` holds the curve abscissa (arc-length coordinate for approach/turn).
struct ReferenceSeries {
    Phase phase = Phase::Forward;
    std::vector<double> w;
    std::vector<Vec2> points;

    std::size_t size() const { return points.size(); }
};

// The four-phase executable plan: approach, forward, turn, backward.
struct RunPlan {
    PathParams path;
    BoxGeometry box;
    std::array<ReferenceSeries, 4> phases;

    const ReferenceSeries& phase(Phase p) const { return phases[static_cast<int>(p)]; }
};

// Validates parameters and applies the straight-line normalization:
// x1 == 0 or x2 == 0 (for the oscillating families) is the straight line.
PathParams make_path(PathFamily family, double x1, double x2, double W);

// Point on the curve at abscissa w in [0, W].
Vec2 evaluate_path(const PathParams& path, double w);

// Unit tangent of the curve at abscissa w (direction of increasing w).
Vec2 path_tangent(const PathParams& path, double w);

// Maximum curvature over the curve, 1/m. Sine: x1*(pi*x2/W)^2. Circle: 1/x1.
// StraightLine: 0. SquareWave has corners, so +infinity.
double max_curvature(const PathParams& path);

// Arc length of the curve between abscissae w0 <= w1 (adaptive Simpson for
// the smooth families, exact for the polyline families).
double arc_length(const PathParams& path, double w0, double w1);

// Samples the curve at uniform arc-length steps of approximately `spacing`;
// first point at w = 0, last at w = W. Polyline families keep their corner
// vertices in addition to the uniform steps.
ReferenceSeries sample_reference(const PathParams& path, double spacing);

struct PlanOptions {
    double spacing = 0.05;       // m between reference points
    double approach_length = 15; // m of straight tangent lead-in
};

// Builds the four-phase plan. Throws InfeasibleError naming the violated
// constraint when the path or the turn does not fit the box.
RunPlan build_run_plan(const PathParams& path, const BoxGeometry& box,
                       const PlanOptions& opts = {});

// Sum of Euclidean distances between consecutive points.
double path_length(const std::vector<Vec2>& points);
double path_length(const ReferenceSeries& series);

} // namespace pathbench
