#include "pathbench/sim.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pathbench/rng.hpp"

namespace pathbench {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;

double wrap_pi(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

// Guidance bookkeeping over one reference series. The along-path position
// is tracked by projecting the vehicle onto a forward window of segments
// (monotone, so the vehicle cannot be re-assigned to an earlier lobe), and
// the aim point is the carrot at a fixed lookahead arc ahead of it. A
// literal "advance when within lookahead" rule stalls in an orbit whenever
// the curvature exceeds the vehicle's turning ability; the windowed
// projection consumes exactly the same points while staying live.
class LosTracker {
public:
    LosTracker(const ReferenceSeries& series, double lookahead)
        : series_(series), lookahead_(lookahead) {
        seg_lens_.resize(series.size() - 1);
        cum_.resize(series.size());
        cum_[0] = 0.0;
        for (std::size_t i = 0; i + 1 < series.size(); ++i) {
            seg_lens_[i] = (series.points[i + 1] - series.points[i]).norm();
            cum_[i + 1] = cum_[i] + seg_lens_[i];
        }
        window_ = std::max(4.0 * lookahead, 25.0);
    }

    // Re-projects the vehicle and returns the carrot point.
    Vec2 update(Vec2 pos) {
        double best_d2 = std::numeric_limits<double>::max();
        std::size_t best_seg = seg_;
        double best_t = 0.0;
        for (std::size_t j = seg_; j < seg_lens_.size(); ++j) {
            if (cum_[j] - cum_[seg_] > window_) break;
            const Vec2 a = series_.points[j];
            const Vec2 b = series_.points[j + 1];
            const Vec2 d = b - a;
            double t = seg_lens_[j] > 0.0
                           ? dot(pos - a, d) / (seg_lens_[j] * seg_lens_[j])
                           : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const Vec2 proj = a + d * t;
            const double d2 = (proj - pos).squared_norm();
            if (d2 < best_d2) {
                best_d2 = d2;
                best_seg = j;
                best_t = t;
            }
        }
        seg_ = best_seg;
        t_ = best_t;

        const double arc_here = cum_[seg_] + t_ * seg_lens_[seg_];
        const double arc_aim = arc_here + lookahead_;
        std::size_t j = seg_;
        while (j + 1 < seg_lens_.size() && cum_[j + 1] < arc_aim) ++j;
        aim_index_ = j + 1;
        if (arc_aim >= cum_.back()) {
            aim_index_ = series_.size() - 1;
            return series_.points.back();
        }
        const double into = arc_aim - cum_[j];
        const Vec2 a = series_.points[j];
        const Vec2 b = series_.points[j + 1];
        return a + (b - a) * (into / seg_lens_[j]);
    }

    // Signed cross-track error against the segment the vehicle projects on.
    double xte(Vec2 pos) const {
        return xte_at(pos, series_.points[seg_], series_.points[seg_ + 1]);
    }

    bool finished(Vec2 pos, double arrival_radius) const {
        if (seg_ + 1 < seg_lens_.size()) return false;
        const Vec2 last = series_.points.back();
        if ((last - pos).norm() <= arrival_radius) return true;
        const Vec2 dir =
            (last - series_.points[series_.size() - 2]).normalized();
        return dot(dir, pos - last) > 0.0;
    }

    int aim_index() const { return static_cast<int>(aim_index_); }

private:
    const ReferenceSeries& series_;
    double lookahead_;
    double window_;
    std::vector<double> seg_lens_;
    std::vector<double> cum_;
    std::size_t seg_ = 0;
    double t_ = 0.0;
    std::size_t aim_index_ = 0;
};

} // namespace

void VehicleParams::validate() const {
    if (!(cruise_speed > 0.0) || !(max_rudder > 0.0) || !(rudder_rate > 0.0) ||
        !(min_turn_radius > 0.0) || !(length > 0.0) || !(control_period > 0.0) ||
        !(los_lookahead > 0.0) || !(heading_gain > 0.0) || !(arrival_radius > 0.0))
        throw ParamError("vehicle parameters must be positive");
}

void NoiseParams::validate() const {
    if (a < 0.0 || heading_max < 0.0 || speed_max < 0.0)
        throw ParamError("noise half-widths must be non-negative");
}

double xte_at(Vec2 pos, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len = d.norm();
    if (len <= 0.0) throw ParamError("degenerate reference segment");
    return cross(d * (1.0 / len), pos - a);
}

Telemetry simulate_run(const RunPlan& plan, const VehicleParams& vp,
                       const NoiseParams& np) {
    vp.validate();
    np.validate();

    Telemetry out;
    const double dt = vp.control_period;

    // Initial state: on the first approach point, aligned with its segment.
    const ReferenceSeries& approach = plan.phase(Phase::Approach);
    if (approach.size() < 2) throw ParamError("approach series needs >= 2 points");
    Vec2 pos = approach.points.front();
    const Vec2 d0 = approach.points[1] - approach.points[0];
    double heading = std::atan2(d0.y, d0.x); // rad
    double rudder = 0.0;                     // deg
    double t = 0.0;

    for (int pi = 0; pi < 4; ++pi) {
        const ReferenceSeries& series = plan.phases[pi];
        if (series.size() < 2) throw ParamError("reference series needs >= 2 points");
        const std::size_t last = series.size() - 1;

        // Per-phase noise substream: runs differing only in a later phase
        // still replay the earlier phases identically.
        SplitMix64 rng(derive_seed(np.seed, {static_cast<std::uint64_t>(pi)}));

        const double phase_len = path_length(series);
        const double timeout =
            vp.timeout_factor * (phase_len / vp.cruise_speed + 60.0);
        const double t_phase_start = t;

        PhaseRange range;
        range.phase = series.phase;
        range.begin = out.samples.size();

        LosTracker tracker(series, vp.los_lookahead);
        for (;;) {
            const Vec2 aim = tracker.update(pos);
            if (tracker.finished(pos, vp.arrival_radius)) break;
            if (t - t_phase_start > timeout) {
                std::ostringstream err;
                err << "simulation failure: phase " << to_string(series.phase)
                    << " did not complete by t = " << t << " s";
                throw NumericError(err.str());
            }

            // proportional LOS heading control with saturated, rate-limited
            // rudder
            const double desired = std::atan2(aim.y - pos.y, aim.x - pos.x);
            const double err_h = wrap_pi(desired - heading);
            const double cmd =
                std::clamp(vp.heading_gain * err_h, -vp.max_rudder, vp.max_rudder);
            const double max_step = vp.rudder_rate * dt;
            rudder += std::clamp(cmd - rudder, -max_step, max_step);

            // fixed draw order per step: speed, x, y, heading
            const double speed = vp.cruise_speed + rng.uniform_sym(np.speed_max);
            const double noise_x = rng.uniform_sym(np.a);
            const double noise_y = rng.uniform_sym(np.a);
            const double noise_h = rng.uniform_sym(np.heading_max);

            const double yaw_rate =
                (speed / vp.min_turn_radius) * (rudder / vp.max_rudder);
            heading = wrap_pi(heading + yaw_rate * dt);
            pos = pos + Vec2{std::cos(heading), std::sin(heading)} * (speed * dt);
            t += dt;

            if (!std::isfinite(pos.x) || !std::isfinite(pos.y) ||
                !std::isfinite(heading)) {
                std::ostringstream err;
                err << "simulation failure: non-finite state in phase "
                    << to_string(series.phase) << " at t = " << t << " s";
                throw NumericError(err.str());
            }

            const std::size_t seg = ref_index > 0 ? ref_index : 1;
            TelemetrySample s;
            s.t = t;
            s.x = pos.x + noise_x;
            s.y = pos.y + noise_y;
            s.heading = heading / kDegToRad + noise_h;
            s.rudder = rudder;
            s.thrust = vp.thrust_cruise *
                       (1.0 + vp.thrust_turn_factor *
                                  (rudder / vp.max_rudder) * (rudder / vp.max_rudder));
            s.xte = xte_at(pos, series.points[seg - 1], series.points[seg]);
            s.ref_index = static_cast<int>(ref_index);
            out.samples.push_back(s);
        }

        range.end = out.samples.size();
        out.phases[pi] = range;
    }
    return out;
}

} // namespace pathbench
