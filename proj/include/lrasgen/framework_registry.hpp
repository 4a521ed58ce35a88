// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/regex.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrasgen {

enum class FrameworkKind { annotation_based, configuration_based };

/// Detection rules for one web framework. A file is an endpoint entry file
/// when its name ends with `suffix` and any pattern in `regex` matches its
/// content. Configuration-based frameworks additionally name the basenames
/// of their route tables.
struct FrameworkCriteria {
	std::string name;
	std::string language;
	std::string suffix;
	std::vector<std::string> regex;
	std::optional<std::vector<std::string>> configuration_files;

	FrameworkKind kind() const noexcept {
		return configuration_files ? FrameworkKind::configuration_based
								   : FrameworkKind::annotation_based;
	}

	bool operator==(const FrameworkCriteria&) const = default;
};

/// Spring Boot, Jersey, Flask, Django, Web.py and ASP.NET Core, in that order.
std::vector<FrameworkCriteria> builtin_criteria();

/// Parses a JSON array of criteria records and merges it over the builtins;
/// a record whose name matches a builtin replaces it, new names are appended.
/// Blank input yields the builtins. Throws MalformedCriteria.
std::vector<FrameworkCriteria> load_criteria(std::string_view document);

/// Throws MalformedCriteria if `criteria` breaks any field invariant.
void validate_criteria(const FrameworkCriteria& criteria);

std::vector<Regex> compile_patterns(const FrameworkCriteria& criteria);

const FrameworkCriteria* find_criteria(const std::vector<FrameworkCriteria>& all,
									   std::string_view name);

} // namespace lrasgen
