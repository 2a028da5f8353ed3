#include "sievedyn/cycle_io.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "sievedyn/errors.hpp"

namespace sievedyn {

namespace {

constexpr std::array<char, 4> kMagic{'G', 'C', 'Y', 'C'};

void put_u16(std::ostream& out, std::uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(bytes, 2);
}

std::uint16_t get_u16(std::istream& in) {
  unsigned char bytes[2];
  if (!in.read(reinterpret_cast<char*>(bytes), 2)) throw ValidationError("truncated cycle file");
  return static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
}

void write_header(std::ostream& out, std::uint64_t stage_prime) {
  out.write(kMagic.data(), kMagic.size());
  put_u16(out, kCycleFormatVersion);
  const std::string prime = std::to_string(stage_prime);
  out.put(static_cast<char>(prime.size()));
  out.write(prime.data(), static_cast<std::streamsize>(prime.size()));
  out.put(static_cast<char>(sizeof(Gap)));
}

}  // namespace

void write_cycle_binary(std::ostream& out, const GapCycle& c) {
  write_header(out, c.stage_prime());
  for (Gap g : c.gaps()) put_u16(out, g);
}

void write_cycle_binary(std::ostream& out, GapStream& stream) {
  write_header(out, stream.stage_prime());
  Gap g;
  while (stream.next(g)) put_u16(out, g);
}

GapCycle read_cycle_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ValidationError("not a GCYC cycle file");
  }
  const std::uint16_t version = get_u16(in);
  if (version != kCycleFormatVersion) {
    throw ValidationError("unsupported GCYC version " + std::to_string(version));
  }
  const int len = in.get();
  if (len <= 0 || len > 20) throw ValidationError("bad stage prime field in cycle file");
  std::string prime(static_cast<std::size_t>(len), '\0');
  if (!in.read(prime.data(), len)) throw ValidationError("truncated cycle file");
  for (char ch : prime) {
    if (ch < '0' || ch > '9') throw ValidationError("stage prime is not a decimal string");
  }
  const int width = in.get();
  if (width != static_cast<int>(sizeof(Gap))) {
    throw ValidationError("unsupported gap width " + std::to_string(width));
  }
  std::vector<Gap> gaps;
  while (in.peek() != std::char_traits<char>::eof()) gaps.push_back(get_u16(in));
  return GapCycle(std::stoull(prime), std::move(gaps));
}

void write_cycle_csv(std::ostream& out, const GapCycle& c) {
  for (Gap g : c.gaps()) out << g << '\n';
}

void write_cycle_csv(std::ostream& out, GapStream& stream) {
  Gap g;
  while (stream.next(g)) out << g << '\n';
}

}  // namespace sievedyn
