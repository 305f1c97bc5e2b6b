#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pathbench/geometry.hpp"

namespace pathbench {

// Kinematic unicycle stand-in for a small rudder-steered USV. The yaw rate
// at full rudder equals cruise_speed / min_turn_radius, which ties the
// rudder authority to the documented minimum turning circle.
struct VehicleParams {
    double cruise_speed = 1.0;     // m/s
    double max_rudder = 35.0;      // deg
    double rudder_rate = 15.0;     // deg/s
    double min_turn_radius = 14.0; // m
    double length = 2.4;           // m, hull length (reporting only)
    double control_period = 0.1;   // s
    double los_lookahead = 8.0;    // m

    double heading_gain = 60.0;      // deg of rudder per rad of heading error
    double arrival_radius = 0.5;     // m, terminal capture distance per phase
    double thrust_cruise = 100.0;    // commanded force units at zero rudder
    double thrust_turn_factor = 0.5; // extra thrust fraction at full rudder
    double timeout_factor = 6.0;     // phase timeout multiplier

    void validate() const;
};

// Uniform observation noise on position/heading plus uniform process noise
// on speed, all seeded.
struct NoiseParams {
    double a = 0.2;           // m, position noise half-width per coordinate
    double heading_max = 0.2; // deg
    double speed_max = 0.1;   // m/s
    std::uint64_t seed = 0;

    void validate() const;
};

struct TelemetrySample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0; // deg
    double rudder = 0.0;  // deg
    double thrust = 0.0;  // commanded force units
    double xte = 0.0;     // m, signed (positive to port)
    int ref_index = 0;
};

struct PhaseRange {
    Phase phase = Phase::Approach;
    std::size_t begin = 0;
    std::size_t end = 0; // one past the last sample
};

struct Telemetry {
    std::vector<TelemetrySample> samples;
    std::array<PhaseRange, 4> phases;

    const PhaseRange& range(Phase p) const { return phases[static_cast<int>(p)]; }
    std::size_t size() const { return samples.size(); }
};

// Signed cross-track distance from `pos` to the segment a->b, positive to
// port of the direction of travel.
double xte_at(Vec2 pos, Vec2 a, Vec2 b);

// Executes the four-phase plan under line-of-sight guidance. Pure function
// of its inputs: the same (plan, vp, np) yields bit-identical telemetry.
Telemetry simulate_run(const RunPlan& plan, const VehicleParams& vp,
                       const NoiseParams& np);

} // namespace pathbench
