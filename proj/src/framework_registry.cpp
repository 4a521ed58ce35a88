// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/framework_registry.hpp"

#include "lrasgen/error.hpp"
#include "lrasgen/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace lrasgen {

const char* to_string(ErrorCategory category) noexcept {
	switch (category) {
	case ErrorCategory::usage: return "usage";
	case ErrorCategory::scan: return "scan";
	case ErrorCategory::provider: return "provider";
	case ErrorCategory::schema: return "schema";
	case ErrorCategory::assembly: return "assembly";
	case ErrorCategory::io: return "io";
	}
	return "unknown";
}

// The Spring Boot and Django patterns are fixed upstream and kept byte for
// byte, quirks included. The other four are reconstructed from each
// framework's documented routing idiom:
//   Jersey       - JAX-RS @Path plus the HTTP method annotations
//   Flask        - @<app|blueprint>.route(...), add_url_rule, Flask 2 shortcuts
//   Web.py       - the module-level `urls = (...)` table / web.application
//   ASP.NET Core - [Route]/[Http*] attributes, [ApiController], minimal-API Map*
std::vector<FrameworkCriteria> builtin_criteria() {
	return {
		{
			"spring_boot",
			"java",
			".java",
			{R"(@(GetMapping|PostMapping|PutMapping|DeleteMapping|PatchMapping|RequestMapping|Controller|RestController)\([^)]*\))"},
			std::nullopt,
		},
		{
			"jersey",
			"java",
			".java",
			{R"(@Path\s*\()", R"(@(GET|POST|PUT|DELETE|PATCH|HEAD|OPTIONS)\b)"},
			std::nullopt,
		},
		{
			"flask",
			"python",
			".py",
			{R"(@\w+(\.\w+)*\.route\s*\()", R"(\.add_url_rule\s*\()",
			 R"(@\w+\.(get|post|put|delete|patch)\s*\()"},
			std::nullopt,
		},
		{
			"django",
			"python",
			".py",
			{R"(urlpatterns\s*=\s*\[[^\]]*(path\(['"]([^'"]+)['"],\s*([^,]+)\)|re_path\(['"]([^'"]+)['"],\s*([^,]+)\))[^\]]*\])"},
			std::vector<std::string>{"urls.py"},
		},
		{
			"webpy",
			"python",
			".py",
			{R"(\burls\s*=\s*\()", R"(\bweb\.application\s*\()"},
			std::nullopt,
		},
		{
			"aspnet_core",
			"csharp",
			".cs",
			{R"(\[(Route|Http(Get|Post|Put|Delete|Patch|Head|Options))\b[^\]]*\])",
			 R"(\[ApiController\])", R"(\.Map(Get|Post|Put|Delete|Patch|Methods)\s*\()"},
			std::nullopt,
		},
	};
}

void validate_criteria(const FrameworkCriteria& c) {
	const std::string record = c.name.empty() ? "<unnamed>" : c.name;
	if (c.name.empty())
		throw MalformedCriteria(record, "name", "must be non-empty");
	if (c.language.empty())
		throw MalformedCriteria(record, "language", "must be non-empty");
	if (c.suffix.size() < 2 || c.suffix.front() != '.')
		throw MalformedCriteria(record, "suffix", "must start with '.' and be non-empty");
	if (c.regex.empty())
		throw MalformedCriteria(record, "regex", "must contain at least one pattern");
	for (const auto& pattern : c.regex) {
		try {
			(void)compile_regex(pattern);
		} catch (const boost::regex_error& e) {
			throw MalformedCriteria(record, "regex", "pattern '" + pattern + "' does not compile: " + e.what());
		}
	}
	if (c.configuration_files) {
		if (c.configuration_files->empty())
			throw MalformedCriteria(record, "configuration_files", "must be non-empty when present");
		for (const auto& base : *c.configuration_files) {
			if (base.empty() || base.find_first_of("/\\") != std::string::npos)
				throw MalformedCriteria(record, "configuration_files",
										"'" + base + "' must be a bare file name");
		}
	}
}

namespace {

std::string require_string(const nlohmann::json& obj, const std::string& record, const char* field) {
	auto it = obj.find(field);
	if (it == obj.end())
		throw MalformedCriteria(record, field, "missing");
	if (!it->is_string())
		throw MalformedCriteria(record, field, "must be a string");
	return it->get<std::string>();
}

std::vector<std::string> require_string_list(const nlohmann::json& value, const std::string& record,
											 const char* field) {
	if (!value.is_array())
		throw MalformedCriteria(record, field, "must be an array of strings");
	std::vector<std::string> out;
	for (const auto& item : value) {
		if (!item.is_string())
			throw MalformedCriteria(record, field, "must be an array of strings");
		out.push_back(item.get<std::string>());
	}
	return out;
}

FrameworkCriteria parse_record(const nlohmann::json& obj, std::size_t index) {
	std::string record = "#" + std::to_string(index);
	if (!obj.is_object())
		throw MalformedCriteria(record, "<record>", "must be a JSON object");
	if (auto it = obj.find("name"); it != obj.end() && it->is_string())
		record = it->get<std::string>();

	FrameworkCriteria c;
	c.name = require_string(obj, record, "name");
	c.language = require_string(obj, record, "language");
	c.suffix = require_string(obj, record, "suffix");
	auto regex = obj.find("regex");
	if (regex == obj.end())
		throw MalformedCriteria(record, "regex", "missing");
	c.regex = require_string_list(*regex, record, "regex");
	if (auto cfg = obj.find("configuration_files"); cfg != obj.end() && !cfg->is_null())
		c.configuration_files = require_string_list(*cfg, record, "configuration_files");
	validate_criteria(c);
	return c;
}

} // namespace

std::vector<FrameworkCriteria> load_criteria(std::string_view document) {
	auto merged = builtin_criteria();
	if (text::trim(document).empty())
		return merged;

	nlohmann::json parsed;
	try {
		parsed = nlohmann::json::parse(document);
	} catch (const nlohmann::json::parse_error& e) {
		throw MalformedCriteria("<document>", "<root>", e.what());
	}
	if (!parsed.is_array())
		throw MalformedCriteria("<document>", "<root>", "must be a JSON array of criteria records");

	for (std::size_t i = 0; i < parsed.size(); ++i) {
		auto record = parse_record(parsed[i], i);
		auto existing = std::find_if(merged.begin(), merged.end(),
									 [&](const FrameworkCriteria& c) { return c.name == record.name; });
		if (existing != merged.end())
			*existing = std::move(record);
		else
			merged.push_back(std::move(record));
	}
	return merged;
}

std::vector<Regex> compile_patterns(const FrameworkCriteria& criteria) {
	std::vector<Regex> out;
	out.reserve(criteria.regex.size());
	for (const auto& pattern : criteria.regex)
		out.push_back(compile_regex(pattern));
	return out;
}

const FrameworkCriteria* find_criteria(const std::vector<FrameworkCriteria>& all, std::string_view name) {
	auto it = std::find_if(all.begin(), all.end(), [&](const FrameworkCriteria& c) { return c.name == name; });
	return it == all.end() ? nullptr : &*it;
}

} // namespace lrasgen
