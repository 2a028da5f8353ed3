#pragma once

// Cycle export formats.
//
// Binary layout (all integers little-endian):
//   "GCYC"                     4 bytes magic
//   version                    u16, currently 1
//   stage prime                u8 length n, then n ASCII decimal digits
//   gap width                  u8, bytes per gap (2)
//   gaps                       u16 each, until end of file
//
// CSV: one gap per line, no header.

#include <cstdint>
#include <iosfwd>

#include "sievedyn/cycle.hpp"
#include "sievedyn/gap_stream.hpp"

namespace sievedyn {

inline constexpr std::uint16_t kCycleFormatVersion = 1;

void write_cycle_binary(std::ostream& out, const GapCycle& c);
/// Writes the remaining gaps of the stream; the stream is consumed.
void write_cycle_binary(std::ostream& out, GapStream& stream);
GapCycle read_cycle_binary(std::istream& in);

void write_cycle_csv(std::ostream& out, const GapCycle& c);
void write_cycle_csv(std::ostream& out, GapStream& stream);

}  // namespace sievedyn
