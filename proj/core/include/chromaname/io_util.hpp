#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace chromaname {

/// Whole-file read. Throws Error(FileUnreadable).
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames, so a failed write never
/// leaves a partial file behind. Throws Error(FileUnwritable).
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept;

/// 16 lowercase hex digits.
std::string digest_hex(std::uint64_t digest);

}  // namespace chromaname
