#pragma once

#include <iosfwd>
#include <string>

#include "irsbf/types.hpp"

namespace irsbf {

/// Reads an instance in the plain CSV layout: one "re,im" row per channel, h0
/// first, then h1..hN. Lines starting with '#' and blank lines are ignored.
/// Throws ParseError (with the line number) on malformed rows, InstanceError on
/// an invalid channel set.
ChannelSet read_instance(std::istream& in);
ChannelSet read_instance_file(const std::string& path);

/// Writes `channels` in the same layout with round-trip exact numbers.
/// `comment` lines are emitted first, each prefixed with "# ".
void write_instance(std::ostream& out, const ChannelSet& channels, const std::string& comment = {});

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

} // namespace irsbf
