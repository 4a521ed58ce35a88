// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/project_scanner.hpp"

#include "lrasgen/code_extractor.hpp"
#include "lrasgen/error.hpp"
#include "lrasgen/text.hpp"

#include <algorithm>
#include <set>

namespace lrasgen {

const std::vector<std::string>& default_skipped_dirs() {
	static const std::vector<std::string> dirs{
		".git", "node_modules", "target", "build", "venv", "__pycache__", "bin", "obj",
	};
	return dirs;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
	return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool skip_directory(const std::string& name, const ScanOptions& options) {
	if (options.skip_default_dirs) {
		if (!name.empty() && name.front() == '.')
			return true;
		const auto& defaults = default_skipped_dirs();
		if (std::find(defaults.begin(), defaults.end(), name) != defaults.end())
			return true;
	}
	return std::find(options.extra_skipped_dirs.begin(), options.extra_skipped_dirs.end(), name) !=
		   options.extra_skipped_dirs.end();
}

fs::path checked_root(const fs::path& root) {
	std::error_code ec;
	if (!fs::is_directory(root, ec))
		throw RootNotFound(root.string());
	return text::normalize_path(root);
}

std::string dotted_module_of(const fs::path& file, const fs::path& root) {
	auto rel = file.lexically_relative(root);
	std::string out;
	for (auto it = rel.begin(); it != rel.end(); ++it) {
		std::string part = std::next(it) == rel.end() ? it->stem().string() : it->string();
		if (!out.empty())
			out += '.';
		out += part;
	}
	return out;
}

} // namespace

std::vector<fs::path> walk_files(const fs::path& root_in, std::string_view suffix, const ScanOptions& options) {
	const fs::path root = checked_root(root_in);
	std::vector<fs::path> files;
	std::error_code ec;
	fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
	if (ec)
		throw RootNotFound(root.string());
	for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
		if (ec)
			break;
		const auto& entry = *it;
		std::error_code sec;
		if (entry.is_symlink(sec))
			continue;
		if (entry.is_directory(sec)) {
			if (skip_directory(entry.path().filename().string(), options))
				it.disable_recursion_pending();
			continue;
		}
		if (!entry.is_regular_file(sec))
			continue;
		if (ends_with(entry.path().filename().string(), suffix))
			files.push_back(entry.path().lexically_normal());
	}
	std::sort(files.begin(), files.end(),
			  [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
	files.erase(std::unique(files.begin(), files.end()), files.end());
	return files;
}

std::vector<std::string> extract_handler_references(std::string_view config_text,
													const FrameworkCriteria& criteria) {
	// One route entry: path('route', handler ...), re_path(...) or url(...).
	static const Regex entry_pattern = compile_regex(
		R"(\b(?:re_path|path|url)\(\s*r?['"][^'"]*['"]\s*,\s*([A-Za-z_][\w.]*(?:\(\s*\))?))");

	std::vector<std::string> refs;
	std::set<std::string> seen;
	for (const auto& block_pattern : compile_patterns(criteria)) {
		boost::cregex_iterator blocks(config_text.data(), config_text.data() + config_text.size(), block_pattern);
		for (const boost::cregex_iterator end; blocks != end; ++blocks) {
			const auto& block = (*blocks)[0];
			boost::cregex_iterator entries(block.first, block.second, entry_pattern);
			for (const boost::cregex_iterator eend; entries != eend; ++entries) {
				std::string ref = (*entries)[1].str();
				if (ref.rfind("include", 0) == 0)
					continue;
				if (seen.insert(ref).second)
					refs.push_back(ref);
			}
		}
	}
	return refs;
}

namespace {

// Resolves "views.ProjectList.as_view()" and similar to the defining file.
const fs::path* resolve_handler(std::string ref, const fs::path& config_file, const fs::path& root,
								const SymbolMap& symbols) {
	if (ends_with(ref, "()"))
		ref.resize(ref.size() - 2);
	if (ends_with(ref, ".as_view"))
		ref.resize(ref.size() - std::string_view(".as_view").size());
	if (ref.empty())
		return nullptr;

	if (const auto* hit = symbols.find_qualified(ref))
		return hit;
	const std::string config_module = dotted_module_of(config_file, root);
	const auto dot = config_module.rfind('.');
	if (dot != std::string::npos) {
		if (const auto* hit = symbols.find_qualified(config_module.substr(0, dot) + "." + ref))
			return hit;
	}
	const auto last = ref.rfind('.');
	return symbols.find_name(last == std::string::npos ? ref : ref.substr(last + 1));
}

} // namespace

ScanResult identify_entry_files(const fs::path& root_in, const FrameworkCriteria& criteria,
								const ScanOptions& options) {
	const fs::path root = checked_root(root_in);
	ScanResult result;
	result.framework = criteria.name;

	if (criteria.kind() == FrameworkKind::annotation_based) {
		const auto patterns = compile_patterns(criteria);
		for (const auto& file : walk_files(root, criteria.suffix, options)) {
			auto content = text::read_file(file);
			if (!content) {
				result.diagnostics.push_back("unreadable file skipped: " + file.string());
				continue;
			}
			const bool matched = std::any_of(patterns.begin(), patterns.end(),
											 [&](const Regex& re) { return regex_search(*content, re); });
			if (matched)
				result.entry_files.push_back(file);
		}
		return result;
	}

	const auto& basenames = *criteria.configuration_files;
	const SymbolMap symbols = build_symbol_map(root, criteria.language, options);
	std::set<fs::path> entries;
	for (const auto& file : walk_files(root, "", options)) {
		const std::string base = file.filename().string();
		if (std::find(basenames.begin(), basenames.end(), base) == basenames.end())
			continue;
		auto content = text::read_file(file);
		if (!content) {
			result.diagnostics.push_back("unreadable configuration file skipped: " + file.string());
			continue;
		}
		result.configuration_files_found.push_back(file);
		for (const auto& ref : extract_handler_references(*content, criteria)) {
			const fs::path* target = resolve_handler(ref, file, root, symbols);
			if (!target) {
				result.diagnostics.push_back("unresolved handler reference '" + ref + "' in " + file.string());
				continue;
			}
			if (!ends_with(target->filename().string(), criteria.suffix) || !text::is_under(*target, root))
				continue;
			entries.insert(*target);
			auto& configs = result.configuration_for[*target];
			if (std::find(configs.begin(), configs.end(), file) == configs.end())
				configs.push_back(file);
		}
	}
	result.entry_files.assign(entries.begin(), entries.end());
	std::sort(result.entry_files.begin(), result.entry_files.end(),
			  [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
	return result;
}

Json to_json(const ScanResult& result) {
	Json j;
	j["framework"] = result.framework;
	j["entry_files"] = Json::array();
	for (const auto& f : result.entry_files)
		j["entry_files"].push_back(f.generic_string());
	j["configuration_files"] = Json::array();
	for (const auto& f : result.configuration_files_found)
		j["configuration_files"].push_back(f.generic_string());
	j["diagnostics"] = result.diagnostics;
	return j;
}

} // namespace lrasgen
