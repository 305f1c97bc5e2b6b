#include "pathbench/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pathbench {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail_param(const std::string& msg) { throw ParamError(msg); }

struct PolyVertex {
    double w;
    Vec2 p;
};

// StraightLine and SquareWave are polylines; the square wave keeps only the
// plateaus, with vertical joins at the hemi-period boundaries (entry and
// exit tangents stay along-track).
std::vector<PolyVertex> polyline_vertices(const PathParams& path) {
    std::vector<PolyVertex> v;
    if (path.family == PathFamily::StraightLine) {
        v.push_back({0.0, {0.0, 0.0}});
        v.push_back({path.W, {path.W, 0.0}});
        return v;
    }
    const int n = path.x2;
    const double h = path.W / n;
    double level = path.x1;
    v.push_back({0.0, {0.0, level}});
    for (int k = 1; k < n; ++k) {
        const double w = k * h;
        v.push_back({w, {w, level}});
        level = -level;
        v.push_back({w, {w, level}});
    }
    v.push_back({path.W, {path.W, level}});
    return v;
}

bool is_polyline(PathFamily f) {
    return f == PathFamily::StraightLine || f == PathFamily::SquareWave;
}

double smooth_speed(const PathParams& path, double w) {
    switch (path.family) {
    case PathFamily::Sine: {
        const double k = kPi * path.x2 / path.W;
        const double slope = path.x1 * k * std::cos(k * w);
        return std::sqrt(1.0 + slope * slope);
    }
    case PathFamily::Circle:
        return 2.0 * kPi * path.x1 / path.W;
    default:
        return 1.0;
    }
}

double simpson(const PathParams& path, double a, double m, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const PathParams& path, double a, double m, double b,
                            double fa, double fm, double fb, double whole,
                            double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = smooth_speed(path, lm);
    const double frm = smooth_speed(path, rm);
    const double left = simpson(path, a, lm, m, fa, flm, fm);
    const double right = simpson(path, m, rm, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(path, a, lm, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           adaptive_simpson_rec(path, m, rm, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

double smooth_arc(const PathParams& path, double w0, double w1) {
    if (w1 <= w0) return 0.0;
    // Seed panels finer than the speed oscillation (one hemi-period of the
    // sine gives one full period of cos^2) so the recursion cannot alias.
    const int panels =
        (path.family == PathFamily::Sine) ? std::max(8, 4 * path.x2) : 4;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = w0 + (w1 - w0) * i / panels;
        const double b = w0 + (w1 - w0) * (i + 1) / panels;
        const double fa = smooth_speed(path, a);
        const double m = 0.5 * (a + b);
        const double fm = smooth_speed(path, m);
        const double fb = smooth_speed(path, b);
        const double whole = simpson(path, a, m, b, fa, fm, fb);
        const double eps = 1e-11 * std::max(1.0, std::abs(whole));
        total += adaptive_simpson_rec(path, a, m, b, fa, fm, fb, whole, eps, 40);
    }
    return total;
}

// Solves arc(path, w0, w) = ds for w by safeguarded Newton.
double advance_by_arc(const PathParams& path, double w0, double ds) {
    double lo = w0;
    double hi = path.W;
    double w = std::min(hi, w0 + ds / smooth_speed(path, w0));
    const double tol = 1e-9 * std::max(1.0, ds);
    for (int it = 0; it < 80; ++it) {
        const double err = smooth_arc(path, w0, w) - ds;
        if (std::abs(err) <= tol) return w;
        if (err > 0.0) hi = w; else lo = w;
        const double step = err / smooth_speed(path, w);
        double next = w - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        w = next;
    }
    return w;
}

void append_segment_samples(ReferenceSeries& out, double w_a, Vec2 a, double w_b,
                            Vec2 b, double spacing) {
    const double len = (b - a).norm();
    if (len <= 0.0) return;
    const int steps = std::max<int>(1, static_cast<int>(std::llround(len / spacing)));
    for (int j = 1; j <= steps; ++j) {
        const double t = static_cast<double>(j) / steps;
        out.w.push_back(w_a + t * (w_b - w_a));
        out.points.push_back(a + (b - a) * t);
    }
}

ReferenceSeries sample_polyline(const std::vector<PolyVertex>& verts, double spacing,
                                Phase phase) {
    ReferenceSeries out;
    out.phase = phase;
    out.w.push_back(verts.front().w);
    out.points.push_back(verts.front().p);
    for (std::size_t i = 1; i < verts.size(); ++i) {
        append_segment_samples(out, verts[i - 1].w, verts[i - 1].p, verts[i].w,
                               verts[i].p, spacing);
    }
    return out;
}

Vec2 rot90_left(Vec2 v) { return {-v.y, v.x}; }

} // namespace

std::string to_string(PathFamily f) {
    switch (f) {
    case PathFamily::Sine: return "sine";
    case PathFamily::Circle: return "circle";
    case PathFamily::SquareWave: return "square_wave";
    case PathFamily::StraightLine: return "straight_line";
    }
    return "straight_line";
}

PathFamily path_family_from_string(const std::string& s) {
    if (s == "sine") return PathFamily::Sine;
    if (s == "circle") return PathFamily::Circle;
    if (s == "square_wave") return PathFamily::SquareWave;
    if (s == "straight_line") return PathFamily::StraightLine;
    fail_param("unknown path family '" + s + "'");
}

std::string to_string(Phase p) {
    switch (p) {
    case Phase::Approach: return "approach";
    case Phase::Forward: return "forward";
    case Phase::Turn: return "turn";
    case Phase::Backward: return "backward";
    }
    return "forward";
}

void BoxGeometry::validate() const {
    if (!(W > 0.0) || !(R1 > 0.0) || !(R2 > 0.0))
        fail_param("box dimensions W, R1, R2 must be positive");
    if (!(W < R1)) fail_param("central box width W must be smaller than R1");
    if (!(r > 0.0)) fail_param("turn radius r must be positive");
    if (l < 0.0) fail_param("turn segment length l must be non-negative");
}

PathParams make_path(PathFamily family, double x1, double x2, double W) {
    if (!(W > 0.0)) fail_param("path width W must be positive");
    if (!(x1 >= 0.0)) fail_param("amplitude x1 must be non-negative");
    if (!(x2 >= 0.0) || std::floor(x2) != x2)
        fail_param("hemi-period count x2 must be a non-negative integer");

    PathParams p;
    p.W = W;
    p.family = family;
    p.x1 = x1;
    p.x2 = static_cast<int>(x2);

    switch (family) {
    case PathFamily::Sine:
    case PathFamily::SquareWave:
        if (x1 == 0.0 || p.x2 == 0) p.family = PathFamily::StraightLine;
        break;
    case PathFamily::Circle:
        p.x2 = 0;
        if (x1 == 0.0) p.family = PathFamily::StraightLine;
        break;
    case PathFamily::StraightLine:
        break;
    }
    if (p.family == PathFamily::StraightLine) {
        p.x1 = 0.0;
        p.x2 = 0;
    }
    return p;
}

Vec2 evaluate_path(const PathParams& path, double w) {
    if (w < -1e-9 || w > path.W + 1e-9)
        fail_param("abscissa w outside [0, W]");
    w = std::clamp(w, 0.0, path.W);
    switch (path.family) {
    case PathFamily::Sine:
        return {w, path.x1 * std::sin(kPi * path.x2 * w / path.W)};
    case PathFamily::StraightLine:
        return {w, 0.0};
    case PathFamily::Circle: {
        const double phi = 2.0 * kPi * w / path.W - kPi / 2.0;
        return {path.W / 2.0 + path.x1 * std::cos(phi), path.x1 * std::sin(phi)};
    }
    case PathFamily::SquareWave: {
        const int k = std::min(static_cast<int>(std::floor(w * path.x2 / path.W)),
                               path.x2 - 1);
        return {w, (k % 2 == 0) ? path.x1 : -path.x1};
    }
    }
    return {w, 0.0};
}

Vec2 path_tangent(const PathParams& path, double w) {
    w = std::clamp(w, 0.0, path.W);
    switch (path.family) {
    case PathFamily::Sine: {
        const double k = kPi * path.x2 / path.W;
        return Vec2{1.0, path.x1 * k * std::cos(k * w)}.normalized();
    }
    case PathFamily::Circle: {
        const double phi = 2.0 * kPi * w / path.W - kPi / 2.0;
        return Vec2{-std::sin(phi), std::cos(phi)};
    }
    default:
        return {1.0, 0.0};
    }
}

double max_curvature(const PathParams& path) {
    switch (path.family) {
    case PathFamily::Sine: {
        const double k = kPi * path.x2 / path.W;
        return path.x1 * k * k;
    }
    case PathFamily::Circle:
        return 1.0 / path.x1;
    case PathFamily::SquareWave:
        return std::numeric_limits<double>::infinity();
    case PathFamily::StraightLine:
        return 0.0;
    }
    return 0.0;
}

double arc_length(const PathParams& path, double w0, double w1) {
    if (w1 < w0) std::swap(w0, w1);
    w0 = std::clamp(w0, 0.0, path.W);
    w1 = std::clamp(w1, 0.0, path.W);
    switch (path.family) {
    case PathFamily::StraightLine:
        return w1 - w0;
    case PathFamily::Circle:
        return (w1 - w0) * 2.0 * kPi * path.x1 / path.W;
    case PathFamily::Sine:
        return smooth_arc(path, w0, w1);
    case PathFamily::SquareWave: {
        const auto verts = polyline_vertices(path);
        double total = 0.0;
        for (std::size_t i = 1; i < verts.size(); ++i) {
            const double a = verts[i - 1].w;
            const double b = verts[i].w;
            if (a == b) { // vertical join
                if (a > w0 && a <= w1) total += (verts[i].p - verts[i - 1].p).norm();
            } else {
                const double lo = std::max(a, w0);
                const double hi = std::min(b, w1);
                if (hi > lo) total += hi - lo;
            }
        }
        return total;
    }
    }
    return 0.0;
}

ReferenceSeries sample_reference(const PathParams& path, double spacing) {
    if (!(spacing > 0.0)) fail_param("reference spacing must be positive");
    const double total = arc_length(path, 0.0, path.W);
    if (spacing > total)
        fail_param("reference spacing exceeds the path length (degenerate series)");

    if (is_polyline(path.family)) {
        return sample_polyline(polyline_vertices(path), spacing, Phase::Forward);
    }

    ReferenceSeries out;
    out.phase = Phase::Forward;
    const int n = std::max<int>(2, static_cast<int>(std::llround(total / spacing)) + 1);
    const double step = total / (n - 1);
    out.w.reserve(n);
    out.points.reserve(n);
    out.w.push_back(0.0);
    out.points.push_back(evaluate_path(path, 0.0));
    double w = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        w = advance_by_arc(path, w, step);
        out.w.push_back(w);
        out.points.push_back(evaluate_path(path, w));
    }
    out.w.push_back(path.W);
    out.points.push_back(evaluate_path(path, path.W));
    return out;
}

RunPlan build_run_plan(const PathParams& path, const BoxGeometry& box,
                       const PlanOptions& opts) {
    box.validate();
    if (!(opts.spacing > 0.0)) fail_param("reference spacing must be positive");
    if (!(opts.approach_length > 0.0)) fail_param("approach length must be positive");

    const double half_height = box.R2 / 2.0;
    const double amplitude = (path.family == PathFamily::StraightLine) ? 0.0 : path.x1;

    std::ostringstream err;
    if (amplitude > half_height) {
        err << "infeasible plan: path amplitude " << amplitude
            << " m exceeds the central box half-height R2/2 = " << half_height << " m";
        throw InfeasibleError(err.str());
    }
    if (path.family == PathFamily::Circle && path.x1 > box.W / 2.0) {
        err << "infeasible plan: circle diameter " << 2.0 * path.x1
            << " m exceeds the central box length W = " << box.W << " m";
        throw InfeasibleError(err.str());
    }

    RunPlan plan;
    plan.path = path;
    plan.box = box;

    ReferenceSeries forward = sample_reference(path, opts.spacing);
    forward.phase = Phase::Forward;

    // Approach: straight lead-in along the tangent at the entry point.
    const Vec2 entry = forward.points.front();
    const Vec2 t0 = path_tangent(path, 0.0);
    std::vector<PolyVertex> app{{-opts.approach_length, entry - t0 * opts.approach_length},
                                {0.0, entry}};
    ReferenceSeries approach = sample_polyline(app, opts.spacing, Phase::Approach);

    // Turn: a turn-around manoeuvre beyond the path end that re-enters the
    // central box along the backward tangent, as the repeatability protocol
    // requires for both directions. In the exit-tangent frame it is
    //   1. an outbound straight leg of length max(l, 2r + run_in),
    //   2. the U-semicircle of radius r (lateral offset 2r),
    //   3. an inbound leg parallel to the tangent line,
    //   4. an S of two quarter-circles of radius r descending the 2r offset,
    //   5. a straight run-in along the tangent line back to the exit point.
    // The along-track margin is used freely; only the cross-track extent is
    // checked against the box.
    const Vec2 exit = forward.points.back();
    const Vec2 te = path_tangent(path, path.W);
    const double side = (exit.y <= 0.0) ? 1.0 : -1.0;
    const Vec2 n_hat = rot90_left(te) * side;

    // Steep exit tangents tilt the whole manoeuvre cross-track, so the
    // run-in shrinks to what the cross-track budget allows (never below a
    // workable minimum).
    const double ty = std::abs(te.y);
    const double ny = std::abs(n_hat.y);
    double run_in = opts.approach_length;
    if (ty > 1e-9) {
        const double budget =
            half_height - std::abs(exit.y) - 2.0 * box.r * ny - box.r * ty - 1.0;
        run_in = std::clamp(budget / ty - 2.0 * box.r, 8.0, opts.approach_length);
    }
    const double out_leg = std::max(box.l, 2.0 * box.r + run_in);
    const double back_leg = out_leg - 2.0 * box.r - run_in;

    // waypoint poses in the tangent frame (u along te, v along n_hat)
    auto frame = [&](double u, double v) { return exit + te * u + n_hat * v; };

    ReferenceSeries turn;
    turn.phase = Phase::Turn;
    turn.w.push_back(0.0);
    turn.points.push_back(exit);
    double s = 0.0;
    auto add_line = [&](Vec2 from, Vec2 to) {
        const double len = (to - from).norm();
        append_segment_samples(turn, s, from, s + len, to, opts.spacing);
        s += len;
    };
    // Arc angles are expressed in the tangent frame and mapped through
    // frame(); a point at frame-angle a on a circle of center (cu, cv) is
    // frame(cu + r cos a, cv + r sin a).
    auto add_frame_arc = [&](double cu, double cv, double a_begin, double sweep) {
        const double len = box.r * std::abs(sweep);
        const int n = std::max<int>(2, static_cast<int>(std::llround(len / opts.spacing)) + 1);
        for (int i = 1; i < n; ++i) {
            const double a = a_begin + sweep * i / (n - 1);
            turn.w.push_back(s + len * i / (n - 1));
            turn.points.push_back(frame(cu + box.r * std::cos(a), cv + box.r * std::sin(a)));
        }
        s += len;
    };

    add_line(exit, frame(out_leg, 0.0));
    // U-semicircle: from (out_leg, 0) heading +u to (out_leg, 2r) heading -u
    add_frame_arc(out_leg, box.r, -kPi / 2.0, kPi);
    if (back_leg > 0.0) {
        add_line(frame(out_leg, 2.0 * box.r), frame(run_in + 2.0 * box.r, 2.0 * box.r));
    }
    // S-descent: quarter turn toward the line, quarter turn back to -u
    const double su = run_in + 2.0 * box.r;
    add_frame_arc(su, box.r, kPi / 2.0, kPi / 2.0);
    add_frame_arc(su - 2.0 * box.r, box.r, 0.0, -kPi / 2.0);
    // run-in along the backward entry tangent
    add_line(frame(run_in, 0.0), exit);

    for (const Vec2& p : turn.points) {
        if (std::abs(p.y) > half_height) {
            err << "infeasible plan: turn manoeuvre of radius " << box.r
                << " m exceeds the cross-track half-height R2/2 = " << half_height
                << " m";
            throw InfeasibleError(err.str());
        }
    }

    ReferenceSeries backward;
    backward.phase = Phase::Backward;
    backward.w.assign(forward.w.rbegin(), forward.w.rend());
    backward.points.assign(forward.points.rbegin(), forward.points.rend());

    plan.phases = {std::move(approach), std::move(forward), std::move(turn),
                   std::move(backward)};
    return plan;
}

double path_length(const std::vector<Vec2>& points) {
    if (points.size() < 2) fail_param("path length requires at least 2 points");
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        total += (points[i] - points[i - 1]).norm();
    }
    return total;
}

double path_length(const ReferenceSeries& series) { return path_length(series.points); }

} // namespace pathbench
