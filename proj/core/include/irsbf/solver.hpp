#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "irsbf/breakpoints.hpp"
#include "irsbf/types.hpp"

namespace irsbf {

struct SolveStats {
    std::size_t distinct_breakpoints = 0; // L
    std::size_t arcs_evaluated = 0;
    SortKind sort_kind = SortKind::bin;
};

struct SolveResult {
    PhaseConfig config;
    double boost = 0.0;
    Complex g;               // composite channel of `config`, by direct summation
    double mu_angle = 0.0;   // phase of g in [0, 2pi)
    std::size_t arc_index = 0;
    double arc_begin = 0.0;  // open arc (arc_begin, arc_end), counterclockwise
    double arc_end = 0.0;
    SolveStats stats;
};

/// One visited arc during a sweep: its index, the shifts in force and the
/// incrementally maintained composite channel.
struct SweepStep {
    std::size_t arc;
    std::span<const int> shifts;
    Complex g;
};

struct SweepOptions {
    /// Called once per evaluated arc, in sweep order.
    std::function<void(const SweepStep&)> observer;
    /// Evaluate at most this many arcs (all L when unset). Diagnostic only:
    /// any limit below L can miss the optimum.
    std::optional<std::size_t> max_arcs;
};

/// Closest discrete rotation of every element towards direction `mu_angle`:
/// k_n minimizes |(k_n omega + alpha_n - mu) mod 2pi| taken in (-pi, pi].
/// Equidistant candidates resolve to the smaller k_n.
PhaseConfig initial_assignment(const ChannelSet& channels, int levels, double mu_angle);

/// Closest k in {1..K} to the rotation `target` (radians), ties to the smaller k.
int nearest_shift(double target, int levels);

/// Counterclockwise sweep over all L arcs of `bps` with the incremental
/// composite update, returning the best arc's configuration.
/// Throws InstanceError if `bps` was not built from `channels`.
SolveResult sweep(const ChannelSet& channels, const BreakpointList& bps,
                  const SweepOptions& options = {});

/// Globally optimal discrete phase configuration.
SolveResult solve(const ChannelSet& channels, int levels, SortKind kind = SortKind::bin);

/// Same optimum as solve(), enumerating only the arcs within 2pi/K of the
/// direct channel's phase (at most 2N+1 candidates).
SolveResult solve_reduced(const ChannelSet& channels, int levels);

} // namespace irsbf
