// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/text.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace lrasgen::text {

namespace {

constexpr std::string_view replacement_char = "\xEF\xBF\xBD";

// Length of the valid UTF-8 sequence starting at `i`, or 0 if invalid.
std::size_t valid_sequence_length(std::string_view s, std::size_t i) {
	const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
	const unsigned char lead = byte(i);
	if (lead < 0x80)
		return 1;
	std::size_t len = 0;
	unsigned char lo = 0x80, hi = 0xBF;
	if (lead >= 0xC2 && lead <= 0xDF) {
		len = 2;
	} else if (lead >= 0xE0 && lead <= 0xEF) {
		len = 3;
		if (lead == 0xE0)
			lo = 0xA0;
		if (lead == 0xED)
			hi = 0x9F;
	} else if (lead >= 0xF0 && lead <= 0xF4) {
		len = 4;
		if (lead == 0xF0)
			lo = 0x90;
		if (lead == 0xF4)
			hi = 0x8F;
	} else {
		return 0;
	}
	if (i + len > s.size())
		return 0;
	if (byte(i + 1) < lo || byte(i + 1) > hi)
		return 0;
	for (std::size_t k = 2; k < len; ++k)
		if (byte(i + k) < 0x80 || byte(i + k) > 0xBF)
			return 0;
	return len;
}

} // namespace

std::string to_valid_utf8(std::string_view bytes) {
	std::string out;
	out.reserve(bytes.size());
	std::size_t i = 0;
	while (i < bytes.size()) {
		const std::size_t len = valid_sequence_length(bytes, i);
		if (len == 0) {
			out += replacement_char;
			++i;
		} else {
			out.append(bytes.substr(i, len));
			i += len;
		}
	}
	return out;
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		return std::nullopt;
	std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
	if (in.bad())
		return std::nullopt;
	return to_valid_utf8(bytes);
}

std::vector<std::string_view> split_lines(std::string_view text) {
	std::vector<std::string_view> lines;
	std::size_t start = 0;
	while (start < text.size()) {
		std::size_t end = text.find('\n', start);
		if (end == std::string_view::npos)
			end = text.size();
		std::string_view line = text.substr(start, end - start);
		if (!line.empty() && line.back() == '\r')
			line.remove_suffix(1);
		lines.push_back(line);
		start = end + 1;
	}
	return lines;
}

std::string join_lines(const std::vector<std::string_view>& lines) {
	std::string out;
	for (std::size_t i = 0; i < lines.size(); ++i) {
		if (i > 0)
			out += '\n';
		out.append(lines[i]);
	}
	return out;
}

std::string_view trim(std::string_view s) {
	const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
	while (!s.empty() && is_space(s.front()))
		s.remove_prefix(1);
	while (!s.empty() && is_space(s.back()))
		s.remove_suffix(1);
	return s;
}

std::string to_lower(std::string_view s) {
	std::string out(s);
	std::transform(out.begin(), out.end(), out.begin(),
				   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
	return out;
}

std::string to_upper(std::string_view s) {
	std::string out(s);
	std::transform(out.begin(), out.end(), out.begin(),
				   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
	return out;
}

bool is_under(const std::filesystem::path& path, const std::filesystem::path& root) {
	const auto p = path.lexically_normal();
	const auto r = root.lexically_normal();
	auto pit = p.begin();
	for (auto rit = r.begin(); rit != r.end(); ++rit, ++pit) {
		// a trailing separator normalizes to an empty final element
		if (rit->empty() && std::next(rit) == r.end())
			return true;
		if (pit == p.end() || *pit != *rit)
			return false;
	}
	return true;
}

std::filesystem::path normalize_path(const std::filesystem::path& path) {
	std::error_code ec;
	auto canonical = std::filesystem::weakly_canonical(std::filesystem::absolute(path), ec);
	if (ec)
		return std::filesystem::absolute(path).lexically_normal();
	return canonical.lexically_normal();
}

std::string relative_display(const std::filesystem::path& path, const std::filesystem::path& root) {
	if (is_under(path, root)) {
		auto rel = path.lexically_normal().lexically_relative(root.lexically_normal());
		if (!rel.empty())
			return rel.generic_string();
	}
	return path.generic_string();
}

std::string sha256_hex(std::string_view data) {
	std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
	unsigned int length = 0;
	EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr);
	static constexpr char hex[] = "0123456789abcdef";
	std::string out;
	out.reserve(length * 2);
	for (unsigned int i = 0; i < length; ++i) {
		out += hex[digest[i] >> 4];
		out += hex[digest[i] & 0x0F];
	}
	return out;
}

} // namespace lrasgen::text
