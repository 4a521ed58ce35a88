// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/error.hpp"
#include "lrasgen/llm/provider.hpp"
#include "lrasgen/llm/types.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lrasgen {

/// Exit statuses. Each fatal ErrorCategory has its own code.
enum ExitCode : int {
	exit_ok = 0,
	exit_internal = 1,
	exit_usage = 2,
	exit_scan = 3,
	exit_provider = 4,
	exit_schema = 5,
	exit_assembly = 6,
	exit_io = 7,
};

int exit_code_for(ErrorCategory category) noexcept;

struct RunConfig {
	std::filesystem::path project_root;
	std::string framework = "auto";
	std::optional<std::filesystem::path> criteria_file;
	ProviderConfig provider;
	std::filesystem::path output;
	bool yaml = false;
	int import_depth = 1;
	std::optional<std::filesystem::path> dump_contexts;
	std::optional<std::filesystem::path> report;
	bool offline = false;
	std::optional<std::filesystem::path> fixtures;
	std::string title;
};

/// Builds the live chat provider; tests substitute their own.
using ProviderFactory = std::function<std::unique_ptr<ChatProvider>(const std::string& api_key)>;

struct CliEnvironment {
	/// Environment lookup; defaults to std::getenv.
	std::function<std::optional<std::string>(const std::string&)> getenv;
	ProviderFactory live_provider;
};

CliEnvironment default_environment();

/// Runs one command line (without the program name) and returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
			const CliEnvironment& env = default_environment());

} // namespace lrasgen
