// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"
#include "lrasgen/llm/provider.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace lrasgen::testing {

std::filesystem::path test_data_dir();
std::filesystem::path project_fixture(const std::string& name);
std::filesystem::path replies_fixture(const std::string& name);
std::filesystem::path plan_file(const std::string& name);
std::filesystem::path golden_file(const std::string& name);
std::filesystem::path data_dir();

/// Fresh, empty directory under the system temp dir.
std::filesystem::path make_temp_dir(const std::string& tag);

std::string slurp(const std::filesystem::path& path);
/// Keeps a copy of an emitted OpenAPI document under the build tree so the
/// independent validator can check every document the suite produced.
/// Returns the meta-schema issues for `document`.
std::vector<std::string> record_emitted(const std::string& name, const Json& document);
std::filesystem::path emit_dir();
void write_text(const std::filesystem::path& path, const std::string& text);

/// Answers prompts from a plan instead of a model. Prompts are routed by the
/// stage they belong to:
///   stage_a  - rule "match" must occur in the endpoint code
///   stage_b  - rule "method" equals the method name in the prompt
///   stage_c  - rule "method" and "parameter" equal those in the prompt
/// A rule's "reply" may be a string or any JSON value (sent as a fenced
/// block). "replies" (array) gives one reply per attempt, for retry tests.
/// Unmatched stage C prompts get "default_constraints" when present.
class ScriptedProvider final : public ChatProvider {
public:
	explicit ScriptedProvider(Json plan);

	std::string send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) override;

	std::size_t calls() const noexcept { return calls_.load(); }
	std::vector<std::vector<ChatMessage>> conversations() const;

private:
	Json plan_;
	std::atomic<std::size_t> calls_{0};
	mutable std::mutex mutex_;
	std::vector<std::vector<ChatMessage>> log_;
};

std::string render_reply(const Json& reply);

/// Runs the lrasgen command line in-process; the live provider (if any) is
/// a ScriptedProvider over `plan`, and LRASGEN_API_KEY is set unless
/// `api_key` is empty.
struct CliRun {
	int status = 0;
	std::string out;
	std::string err;
};
CliRun run_lrasgen(const std::vector<std::string>& args, const Json& plan = nullptr,
				   const std::string& api_key = "test-key");

} // namespace lrasgen::testing
