#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "covert/dsp.hpp"

namespace covert {

// Binary IQ capture format:
//   bytes 0..7   magic "COVERTIQ"
//   bytes 8..11  format version, uint32 little-endian (currently 1)
//   bytes 12..15 reserved, zero
//   bytes 16..23 sample count, uint64 little-endian
//   then count interleaved IEEE-754 binary64 little-endian (I, Q) pairs.

inline constexpr char kIqMagic[8] = {'C', 'O', 'V', 'E', 'R', 'T', 'I', 'Q'};
inline constexpr std::uint32_t kIqVersion = 1;

// Filesystem-level failure (open/read/write).
struct IqIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally invalid file; byte_offset locates the first offending byte.
struct IqFormatError : std::runtime_error {
  IqFormatError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what), byte_offset(offset) {}
  std::uint64_t byte_offset = 0;
};

void export_iq(const IqFrame& frame, const std::string& path);
IqFrame import_iq(const std::string& path);

}  // namespace covert
