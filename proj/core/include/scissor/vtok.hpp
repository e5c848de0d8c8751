#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "scissor/tokens.hpp"

namespace scissor::vtok {

// Layout, all integers and floats little-endian:
//   offset  0  magic "VTOK"
//   offset  4  u16 version (1)
//   offset  6  u16 flags (0)
//   offset  8  u32 n_frames
//   offset 12  u32 tokens_per_frame
//   offset 16  u32 dims
//   offset 20  n_frames * tokens_per_frame * dims f32, frame-major, then
//              token, then dimension

inline constexpr std::uint8_t kMagic[4] = {0x56, 0x54, 0x4F, 0x4B};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 20;

std::vector<std::uint8_t> encode(const VideoTokens& video);

/// Throws Error(Format) with the byte offset of the first violation, or
/// Error(UnsupportedVersion).
VideoTokens decode(std::span<const std::uint8_t> bytes);

void write_file(const std::filesystem::path& path, const VideoTokens& video);
VideoTokens read_file(const std::filesystem::path& path);

}  // namespace scissor::vtok
