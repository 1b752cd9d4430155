#include "irsbf/breakpoints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "irsbf/angles.hpp"
#include "irsbf/errors.hpp"

namespace irsbf {

namespace {

// Buckets up to this size are insertion-sorted; larger ones (clustered phases)
// fall back to std::sort so the worst case stays O(n log n).
constexpr std::size_t kInsertionSortLimit = 32;

void insertion_sort(std::vector<Breakpoint>::iterator first, std::vector<Breakpoint>::iterator last) {
    for (auto it = first; it != last; ++it) {
        Breakpoint value = *it;
        auto hole = it;
        while (hole != first && breakpoint_less(value, *(hole - 1))) {
            *hole = *(hole - 1);
            --hole;
        }
        *hole = value;
    }
}

// Counting scatter of [first, last) into `buckets` bins by key(angle), then a
// per-bin finish. Keys must be monotone in angle.
template <class Key, class Finish>
void scatter(std::vector<Breakpoint>::iterator first, std::vector<Breakpoint>::iterator last,
             std::vector<Breakpoint>& scratch, std::uint32_t buckets, Key key, Finish finish) {
    const auto count = static_cast<std::size_t>(last - first);
    std::vector<std::uint32_t> ends(buckets + 1, 0);
    std::vector<std::uint32_t> bucket(count);
    for (std::size_t i = 0; i < count; ++i) {
        bucket[i] = key(first[i].angle);
        ++ends[bucket[i] + 1];
    }
    for (std::uint32_t b = 0; b < buckets; ++b) {
        ends[b + 1] += ends[b];
    }
    scratch.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        scratch[ends[bucket[i]]++] = first[i];
    }
    std::copy(scratch.begin(), scratch.end(), first);
    std::uint32_t begin = 0;
    for (std::uint32_t b = 0; b < buckets; ++b) {
        finish(b, first + begin, first + ends[b]);
        begin = ends[b];
    }
}

void finish_bucket(std::vector<Breakpoint>::iterator first, std::vector<Breakpoint>::iterator last) {
    if (last - first <= static_cast<std::ptrdiff_t>(kInsertionSortLimit)) {
        insertion_sort(first, last);
    } else {
        std::sort(first, last, breakpoint_less);
    }
}

std::uint32_t bin_of(double angle, double scale, std::uint32_t buckets) noexcept {
    return std::min(static_cast<std::uint32_t>(angle * scale), buckets - 1);
}

// Direct scatter into one bucket per entry touches memory at random once the
// array outgrows cache, so large inputs go through a coarse pass first.
constexpr std::size_t kCoarseBuckets = 1024;
constexpr std::size_t kSingleLevelLimit = 1 << 16;

void bin_sort(std::vector<Breakpoint>& entries) {
    const std::size_t count = entries.size();
    if (count < 2) {
        return;
    }
    std::vector<Breakpoint> scratch;
    if (count <= kSingleLevelLimit) {
        const auto buckets = static_cast<std::uint32_t>(count);
        const double scale = static_cast<double>(buckets) / kTwoPi;
        scatter(entries.begin(), entries.end(), scratch, buckets,
                [&](double a) { return bin_of(a, scale, buckets); },
                [](std::uint32_t, auto first, auto last) { finish_bucket(first, last); });
        return;
    }

    const auto coarse = static_cast<std::uint32_t>(kCoarseBuckets);
    const auto per_coarse = static_cast<std::uint32_t>((count + kCoarseBuckets - 1) / kCoarseBuckets);
    const double coarse_scale = static_cast<double>(coarse) / kTwoPi;
    const double fine_scale = coarse_scale * static_cast<double>(per_coarse);
    std::vector<Breakpoint> fine_scratch;
    scatter(entries.begin(), entries.end(), scratch, coarse,
            [&](double a) { return bin_of(a, coarse_scale, coarse); },
            [&](std::uint32_t c, auto first, auto last) {
                if (last - first < 2) {
                    return;
                }
                // fine index relative to this coarse bin; clamping keeps it monotone
                const double base = static_cast<double>(c) * static_cast<double>(per_coarse);
                scatter(first, last, fine_scratch, per_coarse,
                        [&](double a) {
                            const double rel = std::max(0.0, a * fine_scale - base);
                            return bin_of(rel, 1.0, per_coarse);
                        },
                        [](std::uint32_t, auto f, auto l) { finish_bucket(f, l); });
            });
}

} // namespace

std::string_view to_string(SortKind kind) noexcept {
    return kind == SortKind::bin ? "bin" : "comparison";
}

SortKind parse_sort_kind(std::string_view text) {
    if (text == "bin") {
        return SortKind::bin;
    }
    if (text == "comparison") {
        return SortKind::comparison;
    }
    throw ParameterError("unknown sort kind '" + std::string(text) + "' (expected bin or comparison)");
}

bool breakpoint_less(const Breakpoint& a, const Breakpoint& b) noexcept {
    if (a.angle != b.angle) {
        return a.angle < b.angle;
    }
    if (a.element != b.element) {
        return a.element < b.element;
    }
    return a.shift < b.shift;
}

BreakpointList::BreakpointList(std::vector<Breakpoint> sorted_entries, std::size_t elements, int levels)
    : entries_(std::move(sorted_entries)), elements_(elements), levels_(levels) {
    check_levels(levels_);
    if (entries_.size() != elements_ * static_cast<std::size_t>(levels_)) {
        throw InstanceError("breakpoint list holds " + std::to_string(entries_.size()) +
                            " entries, expected N*K = " +
                            std::to_string(elements_ * static_cast<std::size_t>(levels_)));
    }
    std::vector<int> seen(elements_, 0);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const Breakpoint& bp = entries_[i];
        if (bp.element >= elements_ || bp.shift < 1 || bp.shift > static_cast<std::uint32_t>(levels_) ||
            !(bp.angle >= 0.0 && bp.angle < kTwoPi)) {
            throw InstanceError("breakpoint " + std::to_string(i) + " is out of range");
        }
        if (i > 0 && entries_[i].angle < entries_[i - 1].angle) {
            throw InstanceError("breakpoint list is not sorted at entry " + std::to_string(i));
        }
        ++seen[bp.element];
    }
    for (std::size_t n = 0; n < elements_; ++n) {
        if (seen[n] != levels_) {
            throw InstanceError("element " + std::to_string(n + 1) + " has " + std::to_string(seen[n]) +
                                " breakpoints, expected K = " + std::to_string(levels_));
        }
    }

    group_starts_.reserve(entries_.size() + 1);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i == 0 || entries_[i].angle != entries_[i - 1].angle) {
            group_starts_.push_back(i);
        }
    }
    group_starts_.push_back(entries_.size());
}

double breakpoint_angle(double phase, int shift, int levels) noexcept {
    const double half_step = kTwoPi / (2.0 * static_cast<double>(levels));
    double angle = phase + half_step * static_cast<double>(2 * shift - 1);
    // phase < 2pi and the offset is below 2pi, so one exact subtraction suffices
    if (angle >= kTwoPi) {
        angle -= kTwoPi;
    }
    return angle < kTwoPi ? angle : 0.0;
}

std::vector<Breakpoint> raw_breakpoints(const ChannelSet& channels, int levels) {
    check_levels(levels);
    const auto phases = channels.phases();
    if (phases.size() * static_cast<std::size_t>(levels) > std::numeric_limits<std::uint32_t>::max()) {
        throw ParameterError("N*K exceeds the 32-bit breakpoint index range");
    }
    std::vector<Breakpoint> raw;
    raw.reserve(phases.size() * static_cast<std::size_t>(levels));
    for (std::size_t n = 0; n < phases.size(); ++n) {
        for (int k = 1; k <= levels; ++k) {
            raw.push_back({breakpoint_angle(phases[n], k, levels), static_cast<std::uint32_t>(n),
                           static_cast<std::uint32_t>(k)});
        }
    }
    return raw;
}

void sort_breakpoints(std::vector<Breakpoint>& entries, SortKind kind) {
    if (kind == SortKind::bin) {
        bin_sort(entries);
    } else {
        std::sort(entries.begin(), entries.end(), breakpoint_less);
    }
}

BreakpointList breakpoints(const ChannelSet& channels, int levels, SortKind kind) {
    auto entries = raw_breakpoints(channels, levels);
    sort_breakpoints(entries, kind);
    return BreakpointList(std::move(entries), channels.size(), levels);
}

} // namespace irsbf
