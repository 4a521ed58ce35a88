// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/project_scanner.hpp"

#include "lrasgen/json.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lrasgen {

/// Declared type/class/function names mapped to their defining file.
/// `names` is keyed by simple name, `qualified` by package- or
/// module-qualified name (Python modules are also keyed by their own dotted
/// path). Later files win on collision.
struct SymbolMap {
	std::map<std::string, fs::path> names;
	std::map<std::string, fs::path> qualified;
	std::vector<std::string> diagnostics;

	const fs::path* find_name(std::string_view name) const;
	const fs::path* find_qualified(std::string_view name) const;
};

struct EndpointContext {
	fs::path project_root;
	fs::path entry_file;
	std::string cleaned_entry;
	std::map<fs::path, std::string> related;
	/// Subset of `related` keys that are route configuration files.
	std::vector<fs::path> configuration_files;
	std::size_t token_estimate = 0;
	std::vector<std::string> diagnostics;

	/// Entry file followed by every related file, each under a
	/// root-relative "File:" header.
	std::string bundle_text() const;
	/// Entry file followed by its configuration files only.
	std::string entry_with_configuration() const;
};

struct ImportedFile {
	fs::path path;
	int depth = 1;
};

struct ExtractOptions {
	int import_depth = 1;
	/// Model context window in tokens; 0 disables budget enforcement.
	std::size_t context_window = 0;
	std::size_t response_reserve = 4096;
	std::string language = "java";
};

/// Four-characters-per-token approximation; never 0 for non-empty text.
std::size_t estimate_tokens(std::size_t characters);

SymbolMap build_symbol_map(const fs::path& root, std::string_view language,
						   const ScanOptions& options = {});

/// Project-local files imported by `entry_file`, sorted and deduplicated,
/// never including the entry itself.
std::vector<fs::path> resolve_imports(const fs::path& entry_file, const fs::path& root,
									  const SymbolMap& symbols, std::string_view language,
									  int depth = 1);

/// Breadth-first import closure to `depth` hops with the hop count of each file.
std::vector<ImportedFile> resolve_import_graph(const fs::path& entry_file, const fs::path& root,
											   const SymbolMap& symbols, std::string_view language,
											   int depth);

/// Decides whether an import line stays in cleaned output.
using ImportFilter = std::function<bool(std::string_view import_line)>;

/// Keeps imports that do not target a well-known external namespace.
bool default_import_filter(std::string_view import_line);

/// Lexical cleanup: drops blank lines, single-line logging/print statements,
/// leading license banners and external import statements. Lines that start
/// with an annotation, decorator or attribute are never dropped. Idempotent.
std::string clean_code(std::string_view text, const ImportFilter& keep_import = default_import_filter);

/// One context per entry file, in scan order.
std::vector<EndpointContext> build_contexts(const ScanResult& scan, const fs::path& root,
											const ExtractOptions& options, const ScanOptions& scan_options = {});

Json to_json(const EndpointContext& context);

} // namespace lrasgen
