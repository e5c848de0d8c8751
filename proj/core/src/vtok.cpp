#include "scissor/vtok.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "scissor/error.hpp"

namespace scissor::vtok {
namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::uint8_t>((v >> s) & 0xFF));
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

[[noreturn]] void format_error(std::size_t offset, const std::string& what) {
  throw Error(Errc::Format, "at byte offset " + std::to_string(offset) + ": " + what);
}

std::uint32_t checked_u32(std::size_t v, const char* field) {
  if (v > 0xFFFF'FFFFULL) {
    throw Error(Errc::InvalidSize, std::string(field) + " does not fit in 32 bits");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::vector<std::uint8_t> encode(const VideoTokens& video) {
  const std::size_t values = video.total_tokens() * video.dims();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 4 * values);
  for (auto b : kMagic) out.push_back(b);
  put_u16(out, kVersion);
  put_u16(out, 0);
  put_u32(out, checked_u32(video.frames(), "n_frames"));
  put_u32(out, checked_u32(video.tokens_per_frame(), "tokens_per_frame"));
  put_u32(out, checked_u32(video.dims(), "dims"));
  for (const auto& frame : video.all_frames()) {
    for (float x : frame.data()) put_u32(out, std::bit_cast<std::uint32_t>(x));
  }
  return out;
}

VideoTokens decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    format_error(bytes.size(), "truncated header: missing " +
                                   std::to_string(kHeaderSize - bytes.size()) + " bytes");
  }
  const std::uint8_t* p = bytes.data();
  for (std::size_t i = 0; i < 4; ++i) {
    if (p[i] != kMagic[i]) format_error(i, "bad magic, expected \"VTOK\"");
  }
  const std::uint16_t version = get_u16(p + 4);
  if (version != kVersion) {
    throw Error(Errc::UnsupportedVersion,
                "at byte offset 4: version " + std::to_string(version) + " (supported: 1)");
  }
  if (get_u16(p + 6) != 0) format_error(6, "flags must be 0");
  const std::uint32_t n = get_u32(p + 8);
  const std::uint32_t m = get_u32(p + 12);
  const std::uint32_t d = get_u32(p + 16);
  if (n == 0) format_error(8, "n_frames is 0");
  if (m == 0) format_error(12, "tokens_per_frame is 0");
  if (d == 0) format_error(16, "dims is 0");

  const std::uint64_t expected =
      kHeaderSize + 4ULL * static_cast<std::uint64_t>(n) * m * d;
  if (bytes.size() < expected) {
    format_error(bytes.size(), "truncated payload: missing " +
                                   std::to_string(expected - bytes.size()) + " bytes");
  }
  if (bytes.size() > expected) {
    format_error(expected, std::to_string(bytes.size() - expected) + " trailing bytes");
  }

  std::vector<TokenMatrix> frames;
  frames.reserve(n);
  std::size_t offset = kHeaderSize;
  for (std::uint32_t f = 0; f < n; ++f) {
    std::vector<float> data(static_cast<std::size_t>(m) * d);
    for (auto& x : data) {
      x = std::bit_cast<float>(get_u32(p + offset));
      if (!std::isfinite(x)) format_error(offset, "non-finite float");
      offset += 4;
    }
    frames.emplace_back(m, d, std::move(data));
  }
  return VideoTokens(std::move(frames));
}

void write_file(const std::filesystem::path& path, const VideoTokens& video) {
  const auto bytes = encode(video);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

VideoTokens read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode(bytes);
}

}  // namespace scissor::vtok
