// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/framework_registry.hpp"

#include "lrasgen/json.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace lrasgen {

namespace fs = std::filesystem;

/// Directory names skipped unless ScanOptions::skip_default_dirs is false.
/// Hidden directories (leading '.') are skipped under the same switch.
const std::vector<std::string>& default_skipped_dirs();

struct ScanOptions {
	bool skip_default_dirs = true;
	std::vector<std::string> extra_skipped_dirs;
};

struct ScanResult {
	std::string framework;
	std::vector<fs::path> entry_files;
	std::vector<fs::path> configuration_files_found;
	/// For configuration-based frameworks: which route tables referenced each entry file.
	std::map<fs::path, std::vector<fs::path>> configuration_for;
	std::vector<std::string> diagnostics;
};

/// All regular files under `root` whose names end with `suffix` (an empty
/// suffix matches every file), sorted lexicographically. Symbolic links are
/// never followed. Throws RootNotFound.
std::vector<fs::path> walk_files(const fs::path& root, std::string_view suffix,
								 const ScanOptions& options = {});

/// Locates endpoint entry files. Unreadable files become diagnostics.
/// Throws RootNotFound.
ScanResult identify_entry_files(const fs::path& root, const FrameworkCriteria& criteria,
								const ScanOptions& options = {});

/// Route-handler references (e.g. "views.project_list") declared in the
/// route tables of a configuration file, in declaration order.
std::vector<std::string> extract_handler_references(std::string_view config_text,
													const FrameworkCriteria& criteria);

Json to_json(const ScanResult& result);

} // namespace lrasgen
