// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrasgen::text {

/// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string to_valid_utf8(std::string_view bytes);

/// Reads a file as lossily-decoded UTF-8 text. Returns nullopt if the file
/// cannot be opened or read.
std::optional<std::string> read_file(const std::filesystem::path& path);

std::vector<std::string_view> split_lines(std::string_view text);
std::string join_lines(const std::vector<std::string_view>& lines);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

/// True if `path` equals `root` or lies beneath it. Both are compared
/// lexically after normalization.
bool is_under(const std::filesystem::path& path, const std::filesystem::path& root);

/// Absolute, lexically normal form; resolves symlinks in existing prefixes.
std::filesystem::path normalize_path(const std::filesystem::path& path);

/// Root-relative generic path string, falling back to the full path.
std::string relative_display(const std::filesystem::path& path, const std::filesystem::path& root);

std::string sha256_hex(std::string_view data);

} // namespace lrasgen::text
