// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/code_extractor.hpp"

#include "lrasgen/regex.hpp"
#include "lrasgen/text.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lrasgen {

const fs::path* SymbolMap::find_name(std::string_view name) const {
	auto it = names.find(std::string(name));
	return it == names.end() ? nullptr : &it->second;
}

const fs::path* SymbolMap::find_qualified(std::string_view name) const {
	auto it = qualified.find(std::string(name));
	return it == qualified.end() ? nullptr : &it->second;
}

std::size_t estimate_tokens(std::size_t characters) {
	return (characters + 3) / 4;
}

namespace {

enum class Language { java, python, csharp, other };

Language language_of(std::string_view name) {
	const std::string lower = text::to_lower(name);
	if (lower == "java" || lower == "kotlin")
		return Language::java;
	if (lower == "python")
		return Language::python;
	if (lower == "csharp" || lower == "c#")
		return Language::csharp;
	return Language::other;
}

std::string_view suffix_for(Language lang) {
	switch (lang) {
	case Language::java: return ".java";
	case Language::python: return ".py";
	case Language::csharp: return ".cs";
	case Language::other: break;
	}
	return {};
}

std::vector<std::string> all_captures(std::string_view content, const Regex& re, int group) {
	std::vector<std::string> out;
	boost::cregex_iterator it(content.data(), content.data() + content.size(), re);
	for (const boost::cregex_iterator end; it != end; ++it)
		out.push_back((*it)[group].str());
	return out;
}

std::string first_capture(std::string_view content, const Regex& re) {
	boost::cmatch m;
	if (boost::regex_search(content.data(), content.data() + content.size(), m, re))
		return m[1].str();
	return {};
}

// "app/api/views.py" -> "app.api.views"; "__init__" modules name their package.
std::string python_module_of(const fs::path& file, const fs::path& root) {
	const auto rel = file.lexically_relative(root);
	std::vector<std::string> parts;
	for (auto it = rel.begin(); it != rel.end(); ++it) {
		if (std::next(it) == rel.end()) {
			const std::string stem = it->stem().string();
			if (stem != "__init__")
				parts.push_back(stem);
		} else {
			parts.push_back(it->string());
		}
	}
	std::string out;
	for (const auto& p : parts)
		out += (out.empty() ? "" : ".") + p;
	return out;
}

const Regex& java_package_re() {
	static const Regex re = compile_regex(R"(^\s*package\s+([\w.]+)\s*;)");
	return re;
}
const Regex& java_type_re() {
	static const Regex re = compile_regex(
		R"(^[ \t]*(?:(?:public|protected|private|static|final|abstract|sealed|non-sealed|strictfp)\s+)*(?:class|interface|enum|record|@interface)\s+([A-Za-z_]\w*))");
	return re;
}
const Regex& python_def_re() {
	static const Regex re = compile_regex(R"(^(?:async[ \t]+)?(?:def|class)[ \t]+([A-Za-z_]\w*))");
	return re;
}
const Regex& csharp_namespace_re() {
	static const Regex re = compile_regex(R"(^\s*namespace\s+([\w.]+))");
	return re;
}
const Regex& csharp_type_re() {
	static const Regex re = compile_regex(
		R"(^[ \t]*(?:(?:public|internal|private|protected|static|sealed|abstract|partial|readonly|ref)\s+)*(?:class|interface|enum|record|struct)\s+([A-Za-z_]\w*))");
	return re;
}

void insert_symbol(std::map<std::string, fs::path>& map, const std::string& key, const fs::path& file,
				   std::vector<std::string>& diagnostics) {
	auto [it, inserted] = map.try_emplace(key, file);
	if (!inserted && it->second != file) {
		diagnostics.push_back("symbol '" + key + "' declared in both " + it->second.generic_string() + " and " +
							  file.generic_string() + "; using the latter");
		it->second = file;
	}
}

} // namespace

SymbolMap build_symbol_map(const fs::path& root_in, std::string_view language, const ScanOptions& options) {
	SymbolMap map;
	const Language lang = language_of(language);
	if (lang == Language::other) {
		map.diagnostics.push_back("no symbol patterns for language '" + std::string(language) + "'");
		return map;
	}
	const fs::path root = text::normalize_path(root_in);
	for (const auto& file : walk_files(root, suffix_for(lang), options)) {
		auto content = text::read_file(file);
		if (!content) {
			map.diagnostics.push_back("unreadable file skipped: " + file.string());
			continue;
		}
		std::string qualifier;
		std::vector<std::string> declared;
		switch (lang) {
		case Language::java:
			qualifier = first_capture(*content, java_package_re());
			declared = all_captures(*content, java_type_re(), 1);
			break;
		case Language::python:
			qualifier = python_module_of(file, root);
			declared = all_captures(*content, python_def_re(), 1);
			if (!qualifier.empty())
				insert_symbol(map.qualified, qualifier, file, map.diagnostics);
			break;
		case Language::csharp:
			qualifier = first_capture(*content, csharp_namespace_re());
			declared = all_captures(*content, csharp_type_re(), 1);
			break;
		case Language::other:
			break;
		}
		std::set<std::string> unique(declared.begin(), declared.end());
		for (const auto& name : declared) {
			if (unique.erase(name) == 0)
				continue;
			insert_symbol(map.names, name, file, map.diagnostics);
			if (!qualifier.empty())
				insert_symbol(map.qualified, qualifier + "." + name, file, map.diagnostics);
		}
	}
	return map;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
	return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Exact qualified hit, else any qualified key ending in ".<name>" (tolerates
// source roots such as "src/" that prefix module paths).
void lookup_qualified(const SymbolMap& symbols, const std::string& name, std::vector<fs::path>& out) {
	if (const auto* hit = symbols.find_qualified(name)) {
		out.push_back(*hit);
		return;
	}
	const std::string tail = "." + name;
	for (const auto& [key, file] : symbols.qualified)
		if (ends_with(key, tail))
			out.push_back(file);
}

// Every qualified symbol directly inside namespace/package `ns`.
void lookup_members(const SymbolMap& symbols, const std::string& ns, std::vector<fs::path>& out) {
	const std::string prefix = ns + ".";
	for (auto it = symbols.qualified.lower_bound(prefix); it != symbols.qualified.end(); ++it) {
		if (it->first.compare(0, prefix.size(), prefix) != 0)
			break;
		if (it->first.find('.', prefix.size()) == std::string::npos)
			out.push_back(it->second);
	}
}

const Regex& java_import_re() {
	static const Regex re = compile_regex(R"(^\s*import\s+(static\s+)?([\w.]+?)(\.\*)?\s*;)");
	return re;
}
const Regex& python_from_import_re() {
	static const Regex re = compile_regex(R"(^\s*from\s+(\.*)([\w.]*)\s+import\s+(\([^)]*\)|[^\n]+))");
	return re;
}
const Regex& python_import_re() {
	static const Regex re = compile_regex(R"(^\s*import\s+([\w., \t]+))");
	return re;
}
const Regex& csharp_using_re() {
	static const Regex re = compile_regex(R"(^\s*using\s+(static\s+)?([\w.]+)\s*;)");
	return re;
}

std::vector<std::string> split_names(std::string list) {
	std::erase_if(list, [](char c) { return c == '(' || c == ')' || c == '\\'; });
	std::vector<std::string> out;
	std::size_t start = 0;
	while (start <= list.size()) {
		std::size_t end = list.find(',', start);
		if (end == std::string::npos)
			end = list.size();
		std::string_view item = text::trim(std::string_view(list).substr(start, end - start));
		if (auto as = item.find(" as "); as != std::string_view::npos)
			item = text::trim(item.substr(0, as));
		if (auto hash = item.find('#'); hash != std::string_view::npos)
			item = text::trim(item.substr(0, hash));
		if (!item.empty())
			out.emplace_back(item);
		start = end + 1;
	}
	return out;
}

std::string python_package_of(const fs::path& file, const fs::path& root) {
	std::string module = python_module_of(file, root);
	if (file.stem() == "__init__")
		return module;
	const auto dot = module.rfind('.');
	return dot == std::string::npos ? std::string() : module.substr(0, dot);
}

std::string resolve_relative_module(const std::string& dots, const std::string& module, const fs::path& file,
									const fs::path& root) {
	if (dots.empty())
		return module;
	std::string base = python_package_of(file, root);
	for (std::size_t up = 1; up < dots.size(); ++up) {
		const auto dot = base.rfind('.');
		base = dot == std::string::npos ? std::string() : base.substr(0, dot);
	}
	if (module.empty())
		return base;
	return base.empty() ? module : base + "." + module;
}

// Project files targeted by the import statements found in `content`.
std::vector<fs::path> imported_files(std::string_view content, const fs::path& file, const fs::path& root,
									 const SymbolMap& symbols, Language lang) {
	std::vector<fs::path> out;
	const auto each = [&](const Regex& re, auto&& fn) {
		boost::cregex_iterator it(content.data(), content.data() + content.size(), re);
		for (const boost::cregex_iterator end; it != end; ++it)
			fn(*it);
	};
	switch (lang) {
	case Language::java:
		each(java_import_re(), [&](const boost::cmatch& m) {
			const std::string name = m[2].str();
			const bool is_static = m[1].matched;
			if (m[3].matched) {
				if (const auto* cls = symbols.find_qualified(name))
					out.push_back(*cls);
				else
					lookup_members(symbols, name, out);
				return;
			}
			std::vector<fs::path> hits;
			lookup_qualified(symbols, name, hits);
			if (hits.empty() && is_static) {
				const auto dot = name.rfind('.');
				if (dot != std::string::npos)
					lookup_qualified(symbols, name.substr(0, dot), hits);
			}
			out.insert(out.end(), hits.begin(), hits.end());
		});
		break;
	case Language::python:
		each(python_from_import_re(), [&](const boost::cmatch& m) {
			const std::string module = resolve_relative_module(m[1].str(), m[2].str(), file, root);
			for (const auto& name : split_names(m[3].str())) {
				std::vector<fs::path> hits;
				if (name != "*")
					lookup_qualified(symbols, module.empty() ? name : module + "." + name, hits);
				if (hits.empty() && !module.empty())
					lookup_qualified(symbols, module, hits);
				out.insert(out.end(), hits.begin(), hits.end());
			}
		});
		each(python_import_re(), [&](const boost::cmatch& m) {
			for (const auto& name : split_names(m[1].str()))
				lookup_qualified(symbols, name, out);
		});
		break;
	case Language::csharp:
		each(csharp_using_re(), [&](const boost::cmatch& m) {
			const std::string name = m[2].str();
			if (m[1].matched) {
				lookup_qualified(symbols, name, out);
				return;
			}
			lookup_members(symbols, name, out);
		});
		break;
	case Language::other:
		break;
	}
	std::vector<fs::path> filtered;
	for (auto& p : out)
		if (text::is_under(p, root) && p != file)
			filtered.push_back(std::move(p));
	std::sort(filtered.begin(), filtered.end());
	filtered.erase(std::unique(filtered.begin(), filtered.end()), filtered.end());
	return filtered;
}

} // namespace

std::vector<ImportedFile> resolve_import_graph(const fs::path& entry_in, const fs::path& root_in,
											   const SymbolMap& symbols, std::string_view language, int depth) {
	const fs::path root = text::normalize_path(root_in);
	const fs::path entry = text::normalize_path(entry_in);
	const Language lang = language_of(language);

	std::map<fs::path, int> seen{{entry, 0}};
	std::deque<fs::path> frontier{entry};
	for (int hop = 1; hop <= depth && !frontier.empty(); ++hop) {
		std::deque<fs::path> next;
		for (const auto& file : frontier) {
			auto content = text::read_file(file);
			if (!content)
				continue;
			for (auto& imported : imported_files(*content, file, root, symbols, lang)) {
				if (seen.try_emplace(imported, hop).second)
					next.push_back(imported);
			}
		}
		frontier = std::move(next);
	}
	std::vector<ImportedFile> out;
	for (const auto& [path, hop] : seen)
		if (hop > 0)
			out.push_back({path, hop});
	return out;
}

std::vector<fs::path> resolve_imports(const fs::path& entry_file, const fs::path& root, const SymbolMap& symbols,
									  std::string_view language, int depth) {
	std::vector<fs::path> out;
	for (auto& f : resolve_import_graph(entry_file, root, symbols, language, depth))
		out.push_back(std::move(f.path));
	return out;
}

// --- cleaning -------------------------------------------------------------

namespace {

const Regex& import_line_re() {
	static const Regex re =
		compile_regex(R"(^\s*(?:import\s+(?:static\s+)?([\w.*]+)|from\s+([\w.]+)\s+import\b|using\s+(?:static\s+)?([\w.]+)\s*;))");
	return re;
}

const std::vector<Regex>& logging_res() {
	static const std::vector<Regex> res = [] {
		std::vector<Regex> v;
		for (const char* p : {
				 R"(^\s*(?:this\.)?(?:log|logger|LOG|LOGGER|_log|_logger|Log|Logger|log_|logger_)\.(?:trace|debug|info|warn|warning|error|fatal|severe|fine|finer|finest|critical|exception|Log\w*)\s*\(.*\)\s*;?\s*$)",
				 R"(^\s*System\.(?:out|err)\.print(?:ln|f)?\s*\(.*\)\s*;\s*$)",
				 R"(^\s*\w+\.printStackTrace\s*\(\s*\)\s*;\s*$)",
				 R"(^\s*print\s*\(.*\)\s*$)",
				 R"(^\s*logging\.(?:debug|info|warning|warn|error|critical|exception)\s*\(.*\)\s*$)",
				 R"(^\s*Console\.(?:Write|WriteLine)\s*\(.*\)\s*;\s*$)",
			 })
			v.push_back(compile_regex(p));
		return v;
	}();
	return res;
}

const std::vector<std::string_view>& external_prefixes() {
	static const std::vector<std::string_view> prefixes{
		// java
		"java.", "javax.", "jakarta.", "org.springframework.", "org.slf4j.", "org.apache.", "com.fasterxml.",
		"lombok.", "io.swagger.", "org.glassfish.", "org.junit.", "com.google.", "reactor.",
		// python
		"flask", "django", "rest_framework", "typing", "os", "sys", "json", "re", "logging", "datetime", "web",
		"collections", "functools", "dataclasses", "enum", "uuid", "pydantic",
		// c#
		"System", "Microsoft.",
	};
	return prefixes;
}

bool has_balanced_parens(std::string_view line) {
	int depth = 0;
	for (char c : line) {
		if (c == '(')
			++depth;
		else if (c == ')')
			--depth;
	}
	return depth == 0;
}

bool is_protected_line(std::string_view line) {
	const auto t = text::trim(line);
	return !t.empty() && (t.front() == '@' || t.front() == '[');
}

bool is_logging_line(std::string_view line) {
	if (!has_balanced_parens(line))
		return false;
	const auto& res = logging_res();
	return std::any_of(res.begin(), res.end(), [&](const Regex& re) { return regex_search(line, re); });
}

bool is_import_line(std::string_view line) {
	return regex_search(line, import_line_re());
}

bool mentions_license(std::string_view block) {
	const std::string lower = text::to_lower(block);
	return lower.find("license") != std::string::npos || lower.find("licence") != std::string::npos ||
		   lower.find("copyright") != std::string::npos || lower.find("spdx") != std::string::npos;
}

// Length (in lines) of the comment block starting at `start`, or 0.
std::size_t comment_block_length(const std::vector<std::string_view>& lines, std::size_t start) {
	const auto t = text::trim(lines[start]);
	if (t.rfind("/*", 0) == 0) {
		for (std::size_t i = start; i < lines.size(); ++i)
			if (lines[i].find("*/") != std::string_view::npos && (i > start || t.find("*/", 2) != std::string_view::npos))
				return i - start + 1;
		return lines.size() - start;
	}
	for (std::string_view marker : {std::string_view("//"), std::string_view("#")}) {
		if (t.rfind(marker, 0) != 0 || t.rfind("#!", 0) == 0)
			continue;
		std::size_t i = start;
		while (i < lines.size() && text::trim(lines[i]).rfind(marker, 0) == 0)
			++i;
		return i - start;
	}
	return 0;
}

std::vector<std::string_view> clean_pass(const std::vector<std::string_view>& in, const ImportFilter& keep_import) {
	static const Regex annotation_call = compile_regex(R"(@\w+\s*\()");
	std::vector<std::string_view> lines;
	for (auto l : in)
		if (!text::trim(l).empty())
			lines.push_back(l);

	// leading license banner, after an optional shebang
	std::size_t start = (!lines.empty() && text::trim(lines[0]).rfind("#!", 0) == 0) ? 1 : 0;
	if (start < lines.size()) {
		const std::size_t len = comment_block_length(lines, start);
		if (len > 0) {
			std::string block;
			bool has_annotation = false;
			for (std::size_t i = start; i < start + len; ++i) {
				block.append(lines[i]).push_back('\n');
				has_annotation = has_annotation || regex_search(lines[i], annotation_call);
			}
			if (mentions_license(block) && !has_annotation)
				lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(start),
							lines.begin() + static_cast<std::ptrdiff_t>(start + len));
		}
	}

	std::vector<std::string_view> out;
	for (auto l : lines) {
		if (!is_protected_line(l)) {
			if (is_logging_line(l))
				continue;
			if (is_import_line(l) && !keep_import(l))
				continue;
		}
		out.push_back(l);
	}
	return out;
}

} // namespace

bool default_import_filter(std::string_view line) {
	boost::cmatch m;
	if (!boost::regex_search(line.data(), line.data() + line.size(), m, import_line_re()))
		return true;
	std::string target;
	for (int g = 1; g <= 3; ++g)
		if (m[g].matched)
			target = m[g].str();
	for (auto prefix : external_prefixes()) {
		if (target.rfind(prefix, 0) != 0)
			continue;
		// bare module names ("os") must match a whole dotted component
		if (prefix.back() == '.' || target.size() == prefix.size() || target[prefix.size()] == '.')
			return false;
	}
	return true;
}

std::string clean_code(std::string_view source, const ImportFilter& keep_import) {
	std::vector<std::string_view> lines = text::split_lines(source);
	// each pass can expose a new leading banner
	while (true) {
		auto next = clean_pass(lines, keep_import);
		if (next.size() == lines.size())
			break;
		lines = std::move(next);
	}
	return text::join_lines(lines);
}

// --- contexts ---------------------------------------------------------------

std::string EndpointContext::bundle_text() const {
	std::string out = "File: " + text::relative_display(entry_file, project_root) + "\n" + cleaned_entry;
	for (const auto& [path, code] : related)
		out += "\nFile: " + text::relative_display(path, project_root) + "\n" + code;
	return out;
}

std::string EndpointContext::entry_with_configuration() const {
	if (configuration_files.empty())
		return cleaned_entry;
	std::string out = "File: " + text::relative_display(entry_file, project_root) + "\n" + cleaned_entry;
	for (const auto& path : configuration_files) {
		auto it = related.find(path);
		if (it != related.end())
			out += "\nFile: " + text::relative_display(path, project_root) + "\n" + it->second;
	}
	return out;
}

namespace {

std::size_t bundle_chars(const EndpointContext& ctx) {
	std::size_t n = ctx.cleaned_entry.size();
	for (const auto& [_, code] : ctx.related)
		n += code.size();
	return n;
}

} // namespace

std::vector<EndpointContext> build_contexts(const ScanResult& scan, const fs::path& root_in,
											const ExtractOptions& options, const ScanOptions& scan_options) {
	std::vector<EndpointContext> contexts;
	if (scan.entry_files.empty())
		return contexts;
	const fs::path root = text::normalize_path(root_in);
	const Language lang = language_of(options.language);
	const SymbolMap symbols = build_symbol_map(root, options.language, scan_options);

	const auto cleaned = [&](const fs::path& file) -> std::optional<std::string> {
		auto content = text::read_file(file);
		if (!content)
			return std::nullopt;
		return clean_code(*content, [&](std::string_view line) {
			return !imported_files(line, file, root, symbols, lang).empty();
		});
	};

	for (const auto& entry : scan.entry_files) {
		EndpointContext ctx;
		ctx.project_root = root;
		ctx.entry_file = entry;
		auto entry_text = cleaned(entry);
		if (!entry_text) {
			ctx.diagnostics.push_back("unreadable entry file: " + entry.string());
			contexts.push_back(std::move(ctx));
			continue;
		}
		ctx.cleaned_entry = std::move(*entry_text);

		std::map<fs::path, int> depth_of;
		for (const auto& imported : resolve_import_graph(entry, root, symbols, options.language, options.import_depth)) {
			auto code = cleaned(imported.path);
			if (!code) {
				ctx.diagnostics.push_back("unreadable related file skipped: " + imported.path.string());
				continue;
			}
			ctx.related.emplace(imported.path, std::move(*code));
			depth_of[imported.path] = imported.depth;
		}
		if (auto cfg = scan.configuration_for.find(entry); cfg != scan.configuration_for.end()) {
			for (const auto& config : cfg->second) {
				auto code = cleaned(config);
				if (!code) {
					ctx.diagnostics.push_back("unreadable configuration file skipped: " + config.string());
					continue;
				}
				ctx.related[config] = std::move(*code);
				ctx.configuration_files.push_back(config);
				depth_of.erase(config);
			}
		}

		ctx.token_estimate = estimate_tokens(bundle_chars(ctx));
		if (options.context_window > 0) {
			const std::size_t budget =
				options.context_window > options.response_reserve ? options.context_window - options.response_reserve : 0;
			while (ctx.token_estimate > budget && !depth_of.empty()) {
				// deepest first, then largest, then last path
				auto victim = std::max_element(depth_of.begin(), depth_of.end(), [&](const auto& a, const auto& b) {
					const auto sa = ctx.related.at(a.first).size(), sb = ctx.related.at(b.first).size();
					if (a.second != b.second)
						return a.second < b.second;
					if (sa != sb)
						return sa < sb;
					return a.first < b.first;
				});
				ctx.diagnostics.push_back("dropped related file " + text::relative_display(victim->first, root) +
										  " (import depth " + std::to_string(victim->second) + ", " +
										  std::to_string(ctx.related.at(victim->first).size()) +
										  " chars) to fit the token budget");
				ctx.related.erase(victim->first);
				depth_of.erase(victim);
				ctx.token_estimate = estimate_tokens(bundle_chars(ctx));
			}
			if (ctx.token_estimate > budget)
				ctx.diagnostics.push_back("context for " + text::relative_display(entry, root) + " exceeds the token budget (" +
										  std::to_string(ctx.token_estimate) + " > " + std::to_string(budget) + ")");
		}
		contexts.push_back(std::move(ctx));
	}
	return contexts;
}

Json to_json(const EndpointContext& ctx) {
	Json j;
	j["entry_file"] = ctx.entry_file.generic_string();
	j["cleaned_entry"] = ctx.cleaned_entry;
	j["related"] = Json::object();
	for (const auto& [path, code] : ctx.related)
		j["related"][path.generic_string()] = code;
	j["configuration_files"] = Json::array();
	for (const auto& path : ctx.configuration_files)
		j["configuration_files"].push_back(path.generic_string());
	j["token_estimate"] = ctx.token_estimate;
	j["diagnostics"] = ctx.diagnostics;
	return j;
}

} // namespace lrasgen
