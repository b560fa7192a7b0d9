#include "covert/iq_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace covert {

namespace {

void put_u64_le(unsigned char* dst, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) dst[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t get_u64_le(const unsigned char* src) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(src[i]) << (8 * i);
  return v;
}

void put_f64_le(unsigned char* dst, double d) { put_u64_le(dst, std::bit_cast<std::uint64_t>(d)); }

double get_f64_le(const unsigned char* src) { return std::bit_cast<double>(get_u64_le(src)); }

}  // namespace

void export_iq(const IqFrame& frame, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IqIoError("export_iq: cannot open " + path);

  unsigned char header[24];
  std::memcpy(header, kIqMagic, 8);
  header[8] = static_cast<unsigned char>(kIqVersion);
  header[9] = static_cast<unsigned char>(kIqVersion >> 8);
  header[10] = static_cast<unsigned char>(kIqVersion >> 16);
  header[11] = static_cast<unsigned char>(kIqVersion >> 24);
  header[12] = header[13] = header[14] = header[15] = 0;
  put_u64_le(header + 16, frame.size());
  out.write(reinterpret_cast<const char*>(header), sizeof header);

  std::vector<unsigned char> buf(16);
  for (const auto& s : frame.samples) {
    put_f64_le(buf.data(), s.real());
    put_f64_le(buf.data() + 8, s.imag());
    out.write(reinterpret_cast<const char*>(buf.data()), 16);
  }
  if (!out) throw IqIoError("export_iq: write failed for " + path);
}

IqFrame import_iq(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IqIoError("import_iq: cannot open " + path);

  unsigned char header[24];
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (in.gcount() != sizeof header)
    throw IqFormatError("import_iq: truncated header in " + path,
                        static_cast<std::uint64_t>(in.gcount()));
  if (std::memcmp(header, kIqMagic, 8) != 0)
    throw IqFormatError("import_iq: bad magic in " + path, 0);
  const std::uint32_t version = static_cast<std::uint32_t>(header[8]) |
                                (static_cast<std::uint32_t>(header[9]) << 8) |
                                (static_cast<std::uint32_t>(header[10]) << 16) |
                                (static_cast<std::uint32_t>(header[11]) << 24);
  if (version != kIqVersion)
    throw IqFormatError("import_iq: unsupported version " + std::to_string(version), 8);

  const std::uint64_t count = get_u64_le(header + 16);
  IqFrame frame;
  frame.samples.reserve(count);
  std::vector<unsigned char> buf(16);
  for (std::uint64_t i = 0; i < count; ++i) {
    in.read(reinterpret_cast<char*>(buf.data()), 16);
    if (in.gcount() != 16) {
      const std::uint64_t offset = 24 + i * 16 + static_cast<std::uint64_t>(in.gcount());
      throw IqFormatError("import_iq: file truncated mid-sample at byte " +
                              std::to_string(offset) + " in " + path,
                          offset);
    }
    frame.samples.emplace_back(get_f64_le(buf.data()), get_f64_le(buf.data() + 8));
  }
  return frame;
}

}  // namespace covert
