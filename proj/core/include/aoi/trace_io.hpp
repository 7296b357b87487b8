#pragma once

#include <filesystem>
#include <iosfwd>

#include "aoi/types.hpp"

namespace aoi {

// Channel trace text format:
//   N T
//   <T lines of exactly N characters from {G, B}>
// Errors are reported as ParseError carrying the 1-based line number.

ChannelTrace parse_trace(std::istream& in);
void write_trace(std::ostream& out, const ChannelTrace& trace);

ChannelTrace load_trace(const std::filesystem::path& path);
void save_trace(const ChannelTrace& trace, const std::filesystem::path& path);

// Schedule text format: one decision per line, "-" for Idle, the 0-based user
// index otherwise.
Schedule parse_schedule(std::istream& in);
void write_schedule(std::ostream& out, const Schedule& schedule);

}  // namespace aoi
