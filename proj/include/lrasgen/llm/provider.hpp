// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"
#include "lrasgen/llm/types.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace lrasgen {

/// Chat-completion boundary. Implementations must be safe to call from
/// several threads at once.
class ChatProvider {
public:
	virtual ~ChatProvider() = default;
	virtual std::string send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) = 0;
};

/// The request body sent to an OpenAI-compatible endpoint:
/// {"model", "messages": [{"role", "content"}...], "temperature"}.
Json request_payload(const ProviderConfig& config, const std::vector<ChatMessage>& messages);

/// SHA-256 (hex) of the compact serialization of request_payload().
std::string request_hash(const ProviderConfig& config, const std::vector<ChatMessage>& messages);

/// Live provider over HTTP(S). Retries 429/5xx and transport failures with
/// exponential backoff (honoring Retry-After), up to config.http_retries.
class HttpChatProvider final : public ChatProvider {
public:
	explicit HttpChatProvider(std::string api_key);

	std::string send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) override;

	/// Total HTTP attempts made so far, including retries.
	std::size_t attempts() const noexcept { return attempts_.load(); }

private:
	std::string api_key_;
	std::atomic<std::size_t> attempts_{0};
};

/// Replays recorded exchanges from a fixture directory. Each `*.json` file
/// holds {"request_hash", "request", "reply"}. Unknown requests throw FixtureMiss.
class FixtureProvider final : public ChatProvider {
public:
	explicit FixtureProvider(const std::filesystem::path& directory);

	std::string send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) override;

	std::size_t size() const noexcept { return replies_.size(); }

private:
	std::map<std::string, std::string> replies_;
};

/// Forwards to another provider and writes every exchange as a fixture file
/// named `<request_hash>.json`.
class RecordingProvider final : public ChatProvider {
public:
	RecordingProvider(ChatProvider& inner, std::filesystem::path directory);

	std::string send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) override;

	std::size_t recorded() const noexcept { return recorded_.load(); }

private:
	ChatProvider& inner_;
	std::filesystem::path directory_;
	std::mutex write_mutex_;
	std::atomic<std::size_t> recorded_{0};
};

Json fixture_record(const ProviderConfig& config, const std::vector<ChatMessage>& messages, const std::string& reply);

} // namespace lrasgen
