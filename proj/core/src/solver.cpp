#include "irsbf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irsbf/angles.hpp"
#include "irsbf/errors.hpp"
#include "irsbf/objective.hpp"

namespace irsbf {

namespace {

std::vector<Complex> rotation_deltas(const std::vector<Complex>& rotations) {
    // delta[k] = e^{jk omega} - e^{j(k-1) omega}, the change in h_n's rotation
    // factor when its shift advances to k.
    std::vector<Complex> deltas(rotations.size());
    for (std::size_t k = 1; k < rotations.size(); ++k) {
        deltas[k] = rotations[k] - rotations[k - 1];
    }
    return deltas;
}

SolveResult finish(const ChannelSet& channels, PhaseConfig config, std::size_t arc_index,
                   double arc_begin, double arc_end, SolveStats stats) {
    const Complex g = composite(channels, config);
    SolveResult result{std::move(config), boost_of(channels, g), g, normalize_angle(std::arg(g)),
                       arc_index, arc_begin, arc_end, stats};
    return result;
}

} // namespace

int nearest_shift(double target, int levels) {
    check_levels(levels);
    const double t = normalize_angle(target);
    const double step = kTwoPi / static_cast<double>(levels);
    int below = static_cast<int>(std::floor(t / step));
    below = std::clamp(below, 0, levels - 1);
    const int above = below + 1;
    const double d_below = circular_distance(t, kTwoPi * below / levels);
    const double d_above = circular_distance(t, kTwoPi * above / levels);
    const int k_below = below == 0 ? levels : below;
    const int k_above = above; // in [1, K]
    if (d_below < d_above) {
        return k_below;
    }
    if (d_above < d_below) {
        return k_above;
    }
    return std::min(k_below, k_above);
}

PhaseConfig initial_assignment(const ChannelSet& channels, int levels, double mu_angle) {
    check_levels(levels);
    const auto phases = channels.phases();
    std::vector<int> shifts(phases.size());
    for (std::size_t n = 0; n < phases.size(); ++n) {
        shifts[n] = nearest_shift(mu_angle - phases[n], levels);
    }
    return PhaseConfig(levels, std::move(shifts));
}

SolveResult sweep(const ChannelSet& channels, const BreakpointList& bps, const SweepOptions& options) {
    if (bps.elements() != channels.size()) {
        throw InstanceError("breakpoints built for " + std::to_string(bps.elements()) +
                            " elements, channel set has " + std::to_string(channels.size()));
    }
    const int levels = bps.levels();
    const std::size_t arcs = bps.distinct();
    const std::size_t limit = std::min(arcs, options.max_arcs.value_or(arcs));
    if (limit == 0) {
        throw ParameterError("sweep must evaluate at least one arc");
    }

    const auto reflected = channels.reflected();
    const auto phases = channels.phases();
    const auto rotations = rotation_table(levels);
    const auto deltas = rotation_deltas(rotations);

    // Everything the sweep touches per breakpoint sits in one record, since
    // breakpoints visit elements in effectively random order.
    struct Element {
        Complex h;
        double phase;
        int shift;
    };
    std::vector<Element> elements(reflected.size());
    for (std::size_t n = 0; n < reflected.size(); ++n) {
        elements[n] = {reflected[n], phases[n], 0};
    }
    // Exact angle check: a list from another instance with the same N and K
    // would otherwise sweep silently. The last write per element leaves the
    // shift in force just before lambda_1 (wraparound).
    // The same pass lays out each breakpoint's g increment in sweep order, so
    // the sweep itself reads memory sequentially.
    const auto entries = bps.entries();
    std::vector<Complex> increments(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Breakpoint& bp = entries[i];
        Element& e = elements[bp.element];
        if (bp.angle != breakpoint_angle(e.phase, static_cast<int>(bp.shift), levels)) {
            throw InstanceError("breakpoint list was built from a different channel set");
        }
        e.shift = static_cast<int>(bp.shift);
        increments[i] = e.h * deltas[bp.shift];
    }
    for (const Breakpoint& bp : bps.group(0)) {
        elements[bp.element].shift = static_cast<int>(bp.shift);
    }

    std::vector<int> first_arc_shifts(elements.size());
    Complex g = channels.direct();
    for (std::size_t n = 0; n < elements.size(); ++n) {
        first_arc_shifts[n] = elements[n].shift;
        g += elements[n].h * rotations[static_cast<std::size_t>(elements[n].shift)];
    }

    std::vector<int> observed;
    if (options.observer) {
        observed = first_arc_shifts;
    }

    double best_norm = -1.0;
    std::size_t best_arc = 0;
    for (std::size_t arc = 0; arc < limit; ++arc) {
        if (arc > 0) {
            // shifts advance cyclically; the angle check above guarantees each
            // breakpoint moves its element from shift-1 to shift
            const auto group = bps.group(arc);
            const std::size_t begin = static_cast<std::size_t>(group.data() - entries.data());
            for (std::size_t i = begin; i < begin + group.size(); ++i) {
                g += increments[i];
            }
            if (options.observer) {
                for (const Breakpoint& bp : group) {
                    observed[bp.element] = static_cast<int>(bp.shift);
                }
            }
        }
        const double norm = std::norm(g);
        if (norm > best_norm) {
            best_norm = norm;
            best_arc = arc;
        }
        if (options.observer) {
            options.observer(SweepStep{arc, observed, g});
        }
    }

    std::vector<int> winner = std::move(first_arc_shifts);
    for (std::size_t arc = 1; arc <= best_arc; ++arc) {
        for (const Breakpoint& bp : bps.group(arc)) {
            winner[bp.element] = static_cast<int>(bp.shift);
        }
    }

    SolveStats stats;
    stats.distinct_breakpoints = arcs;
    stats.arcs_evaluated = limit;
    return finish(channels, PhaseConfig(levels, std::move(winner)), best_arc, bps.angle(best_arc),
                  bps.angle((best_arc + 1) % arcs), stats);
}

SolveResult solve(const ChannelSet& channels, int levels, SortKind kind) {
    const BreakpointList bps = breakpoints(channels, levels, kind);
    SolveResult result = sweep(channels, bps);
    result.stats.sort_kind = kind;
    return result;
}

SolveResult solve_reduced(const ChannelSet& channels, int levels) {
    check_levels(levels);
    const double step = kTwoPi / static_cast<double>(levels);
    const double half_step = 0.5 * step;
    // The optimal direction lies within one step of h0's phase, so only the
    // window (alpha_0 - step, alpha_0 + step) is swept. Each element has exactly
    // two breakpoints in it.
    const double start = normalize_angle(channels.direct_phase() - step);
    const double width = 2.0 * step;

    struct Event {
        double offset; // from `start`, counterclockwise
        std::uint32_t element;
        int shift;
    };

    const auto phases = channels.phases();
    const std::size_t elements = phases.size();
    std::vector<Event> events;
    events.reserve(2 * elements);
    std::vector<int> initial(elements);
    for (std::size_t n = 0; n < elements; ++n) {
        const double first_offset = normalize_angle(phases[n] + half_step - start); // breakpoint k = 1
        int m = static_cast<int>(std::floor(first_offset / step));
        m = std::clamp(m, 0, levels - 1);
        const double lead = std::max(0.0, first_offset - step * m);
        const int k_first = (levels - m) % levels + 1;
        const int k_second = k_first % levels + 1;
        initial[n] = k_first == 1 ? levels : k_first - 1;
        const auto e = static_cast<std::uint32_t>(n);
        events.push_back({lead, e, k_first});
        if (lead + step < width) {
            events.push_back({lead + step, e, k_second});
        }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        return a.offset != b.offset ? a.offset < b.offset : a.element < b.element;
    });

    const auto reflected = channels.reflected();
    const auto rotations = rotation_table(levels);
    const auto deltas = rotation_deltas(rotations);

    std::vector<int> shifts = initial;
    Complex g = channels.direct();
    for (std::size_t n = 0; n < elements; ++n) {
        g += reflected[n] * rotations[static_cast<std::size_t>(shifts[n])];
    }

    // Candidate arcs: the one starting at the window edge plus one after every
    // group of coinciding events.
    double best_norm = std::norm(g);
    std::size_t best_arc = 0;
    std::size_t best_end = 0; // events consumed by the winning arc
    std::size_t arc = 0;
    std::size_t i = 0;
    while (i < events.size()) {
        std::size_t j = i;
        while (j < events.size() && events[j].offset == events[i].offset) {
            const Event& ev = events[j];
            shifts[ev.element] = ev.shift;
            g += reflected[ev.element] * deltas[static_cast<std::size_t>(ev.shift)];
            ++j;
        }
        ++arc;
        const double norm = std::norm(g);
        if (norm > best_norm) {
            best_norm = norm;
            best_arc = arc;
            best_end = j;
        }
        i = j;
    }

    std::vector<int> winner = initial;
    for (std::size_t e = 0; e < best_end; ++e) {
        winner[events[e].element] = events[e].shift;
    }
    const double begin_offset = best_end == 0 ? 0.0 : events[best_end - 1].offset;
    const double end_offset = best_end < events.size() ? events[best_end].offset : width;

    SolveStats stats;
    stats.distinct_breakpoints = arc;
    stats.arcs_evaluated = arc + 1;
    stats.sort_kind = SortKind::comparison;
    return finish(channels, PhaseConfig(levels, std::move(winner)), best_arc,
                  normalize_angle(start + begin_offset), normalize_angle(start + end_offset), stats);
}

} // namespace irsbf
