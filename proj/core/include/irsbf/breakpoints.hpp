#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "irsbf/types.hpp"

namespace irsbf {

enum class SortKind { bin, comparison };

std::string_view to_string(SortKind kind) noexcept;
/// Accepts "bin" or "comparison"; throws ParameterError otherwise.
SortKind parse_sort_kind(std::string_view text);

/// The direction alpha_n + (k - 1/2) omega at which element n's closest
/// discrete rotation switches from k-1 to k (counterclockwise).
struct Breakpoint {
    double angle;        // [0, 2pi)
    std::uint32_t element; // 0-based element index
    std::uint32_t shift;   // k in {1..K}: the shift element n takes once this point is passed

    bool operator==(const Breakpoint&) const = default;
};

/// Strict weak order used by both sorters: angle, then element, then shift.
bool breakpoint_less(const Breakpoint& a, const Breakpoint& b) noexcept;

/// All N*K breakpoints of an instance sorted counterclockwise from angle 0,
/// with exact-equality groups marking the distinct directions lambda_1 < ... < lambda_L.
class BreakpointList {
public:
    BreakpointList(std::vector<Breakpoint> sorted_entries, std::size_t elements, int levels);

    std::span<const Breakpoint> entries() const noexcept { return entries_; }

    /// Number L of distinct angles.
    std::size_t distinct() const noexcept { return group_starts_.size() - 1; }
    /// lambda_{l+1} for 0-based l.
    double angle(std::size_t group) const noexcept { return entries_[group_starts_[group]].angle; }
    /// Entries sharing angle(group); their elements form N(lambda).
    std::span<const Breakpoint> group(std::size_t group) const noexcept {
        return std::span(entries_).subspan(group_starts_[group],
                                           group_starts_[group + 1] - group_starts_[group]);
    }

    std::size_t elements() const noexcept { return elements_; }
    int levels() const noexcept { return levels_; }

private:
    std::vector<Breakpoint> entries_;
    std::vector<std::size_t> group_starts_; // size L + 1
    std::size_t elements_;
    int levels_;
};

/// normalize(alpha + (k - 1/2) * 2pi / K), bit-identical to the generated entries.
double breakpoint_angle(double phase, int shift, int levels) noexcept;

/// Raw (unsorted) breakpoints, element-major, shift-minor.
std::vector<Breakpoint> raw_breakpoints(const ChannelSet& channels, int levels);

/// Sorts in place with the breakpoint_less order.
///
/// `bin` scatters into size() uniform buckets over [0, 2pi) and insertion-sorts
/// each bucket: expected linear time for uniformly spread phases.
/// `comparison` is std::sort. Both give identical output.
void sort_breakpoints(std::vector<Breakpoint>& entries, SortKind kind);

/// Generates, sorts and groups the breakpoints. Throws ParameterError if K < 2.
BreakpointList breakpoints(const ChannelSet& channels, int levels, SortKind kind = SortKind::bin);

} // namespace irsbf
