// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/llm/json_extract.hpp"

#include "lrasgen/error.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace lrasgen {

namespace {

// Text from the start of the first fenced block. The closing fence is left
// in place: a JSON string may itself contain three backticks, and the
// bracket matcher already stops at the end of the value.
std::optional<std::string_view> fenced_body(std::string_view raw) {
	const auto open = raw.find("```");
	if (open == std::string_view::npos)
		return std::nullopt;
	const auto body_start = raw.find('\n', open + 3);
	if (body_start == std::string_view::npos)
		return std::nullopt;
	return raw.substr(body_start + 1);
}

// Index one past the bracket closing the one at `start`, honoring strings.
std::optional<std::size_t> balanced_end(std::string_view s, std::size_t start) {
	int depth = 0;
	bool in_string = false;
	for (std::size_t i = start; i < s.size(); ++i) {
		const char c = s[i];
		if (in_string) {
			if (c == '\\')
				++i;
			else if (c == '"')
				in_string = false;
			continue;
		}
		if (c == '"') {
			in_string = true;
		} else if (c == '[' || c == '{') {
			++depth;
		} else if (c == ']' || c == '}') {
			if (--depth == 0)
				return i + 1;
		}
	}
	return std::nullopt;
}

bool is_word_char(char c) {
	return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Rewrites Python literals and drops trailing commas outside strings.
std::string relax(std::string_view s) {
	std::string out;
	out.reserve(s.size());
	bool in_string = false;
	for (std::size_t i = 0; i < s.size(); ++i) {
		const char c = s[i];
		if (in_string) {
			out += c;
			if (c == '\\' && i + 1 < s.size())
				out += s[++i];
			else if (c == '"')
				in_string = false;
			continue;
		}
		if (c == '"') {
			in_string = true;
			out += c;
			continue;
		}
		if (c == ',') {
			std::size_t j = i + 1;
			while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j])))
				++j;
			if (j < s.size() && (s[j] == ']' || s[j] == '}'))
				continue;
		}
		const bool boundary = i == 0 || !is_word_char(s[i - 1]);
		bool replaced = false;
		if (boundary) {
			for (auto [from, to] : {std::pair{"True", "true"}, std::pair{"False", "false"}, std::pair{"None", "null"}}) {
				const std::string_view f(from);
				if (s.compare(i, f.size(), f) == 0 && (i + f.size() == s.size() || !is_word_char(s[i + f.size()]))) {
					out += to;
					i += f.size() - 1;
					replaced = true;
					break;
				}
			}
		}
		if (!replaced)
			out += c;
	}
	return out;
}

// Turns Python-style 'single quoted' strings into JSON strings.
std::string requote(std::string_view s) {
	std::string out;
	out.reserve(s.size());
	for (std::size_t i = 0; i < s.size(); ++i) {
		const char c = s[i];
		if (c == '"') {
			std::size_t j = i + 1;
			while (j < s.size() && s[j] != '"')
				j += s[j] == '\\' ? 2 : 1;
			out.append(s.substr(i, std::min(j + 1, s.size()) - i));
			i = j;
			continue;
		}
		if (c != '\'') {
			out += c;
			continue;
		}
		out += '"';
		for (++i; i < s.size() && s[i] != '\''; ++i) {
			if (s[i] == '\\' && i + 1 < s.size()) {
				if (s[i + 1] != '\'')
					out += '\\';
				out += s[++i];
			} else if (s[i] == '"') {
				out += "\\\"";
			} else {
				out += s[i];
			}
		}
		out += '"';
	}
	return out;
}

std::optional<Json> first_value(std::string_view s) {
	for (std::size_t i = 0; i < s.size(); ++i) {
		if (s[i] != '[' && s[i] != '{')
			continue;
		const auto end = balanced_end(s, i);
		if (!end)
			continue;
		const std::string_view candidate = s.substr(i, *end - i);
		try {
			return Json::parse(candidate);
		} catch (const Json::parse_error&) {
		}
		try {
			return Json::parse(relax(candidate));
		} catch (const Json::parse_error&) {
		}
		try {
			return Json::parse(relax(requote(candidate)));
		} catch (const Json::parse_error&) {
		}
	}
	return std::nullopt;
}

} // namespace

Json extract_json(std::string_view raw) {
	// A fence only counts when it opens before the first bracket.
	const auto fence = raw.find("```");
	const bool fence_first = fence != std::string_view::npos && fence < raw.find_first_of("[{");
	if (fence_first) {
		if (auto body = fenced_body(raw))
			if (auto v = first_value(*body))
				return std::move(*v);
	}
	if (auto v = first_value(raw))
		return std::move(*v);
	std::string excerpt(raw.substr(0, 120));
	throw NoJsonFound(excerpt.empty() ? "<empty reply>" : excerpt);
}

} // namespace lrasgen
