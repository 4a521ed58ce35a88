// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/llm/types.hpp"

#include "lrasgen/text.hpp"

#include <array>

namespace lrasgen {

std::string_view to_string(ParamType type) noexcept {
	switch (type) {
	case ParamType::string: return "string";
	case ParamType::number: return "number";
	case ParamType::integer: return "integer";
	case ParamType::object: return "object";
	case ParamType::array: return "array";
	case ParamType::boolean: return "boolean";
	}
	return "string";
}

std::string_view to_string(ParamPosition position) noexcept {
	switch (position) {
	case ParamPosition::query: return "query";
	case ParamPosition::path: return "path";
	case ParamPosition::header: return "header";
	case ParamPosition::cookie: return "cookie";
	case ParamPosition::body: return "body";
	}
	return "query";
}

std::optional<ParamType> parse_param_type(std::string_view raw) {
	const std::string t = text::to_lower(text::trim(raw));
	if (t == "string" || t == "str" || t == "char" || t == "text" || t == "date" || t == "datetime" ||
		t == "date-time" || t == "uuid")
		return ParamType::string;
	if (t == "number" || t == "float" || t == "double" || t == "decimal" || t == "bigdecimal")
		return ParamType::number;
	if (t == "integer" || t == "int" || t == "long" || t == "short" || t == "int32" || t == "int64" ||
		t == "biginteger")
		return ParamType::integer;
	if (t == "object" || t == "dict" || t == "map")
		return ParamType::object;
	if (t == "array" || t == "list" || t == "set" || t == "collection")
		return ParamType::array;
	if (t == "boolean" || t == "bool")
		return ParamType::boolean;
	return std::nullopt;
}

std::optional<ParamPosition> parse_param_position(std::string_view raw) {
	const std::string p = text::to_lower(text::trim(raw));
	if (p == "query")
		return ParamPosition::query;
	if (p == "path")
		return ParamPosition::path;
	if (p == "header")
		return ParamPosition::header;
	if (p == "cookie")
		return ParamPosition::cookie;
	if (p == "body" || p == "requestbody" || p == "request body" || p == "request_body" || p == "form" ||
		p == "formdata")
		return ParamPosition::body;
	return std::nullopt;
}

bool is_http_method(std::string_view upper) noexcept {
	static constexpr std::array<std::string_view, 7> methods{"GET", "POST", "PUT", "DELETE", "PATCH", "HEAD", "OPTIONS"};
	for (auto m : methods)
		if (m == upper)
			return true;
	return false;
}

bool ConstraintSet::empty() const noexcept {
	return !min_length && !max_length && !enumeration && !format && !minimum && !maximum && !default_value;
}

} // namespace lrasgen
