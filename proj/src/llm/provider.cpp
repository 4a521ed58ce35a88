// SPDX-License-Identifier: Apache-2.0
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "lrasgen/llm/provider.hpp"

#include "lrasgen/error.hpp"
#include "lrasgen/text.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

namespace lrasgen {

Json request_payload(const ProviderConfig& config, const std::vector<ChatMessage>& messages) {
	Json payload;
	payload["model"] = config.model;
	payload["messages"] = Json::array();
	for (const auto& m : messages)
		payload["messages"].push_back({{"role", m.role}, {"content", m.content}});
	payload["temperature"] = config.temperature;
	return payload;
}

std::string request_hash(const ProviderConfig& config, const std::vector<ChatMessage>& messages) {
	return text::sha256_hex(request_payload(config, messages).dump());
}

Json fixture_record(const ProviderConfig& config, const std::vector<ChatMessage>& messages, const std::string& reply) {
	Json record;
	record["request_hash"] = request_hash(config, messages);
	record["request"] = request_payload(config, messages);
	record["reply"] = reply;
	return record;
}

// --- live -------------------------------------------------------------------

namespace {

struct ParsedUrl {
	std::string origin; ///< scheme://host[:port]
	std::string path;
};

ParsedUrl parse_url(const std::string& url) {
	const auto scheme_end = url.find("://");
	if (scheme_end == std::string::npos)
		throw ProviderError(0, "endpoint URL lacks a scheme: " + url);
	const auto path_start = url.find('/', scheme_end + 3);
	if (path_start == std::string::npos)
		return {url, "/"};
	return {url.substr(0, path_start), url.substr(path_start)};
}

std::string excerpt(const std::string& body) {
	return body.size() > 300 ? body.substr(0, 300) + "..." : body;
}

} // namespace

HttpChatProvider::HttpChatProvider(std::string api_key) : api_key_(std::move(api_key)) {}

std::string HttpChatProvider::send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) {
	const ParsedUrl url = parse_url(config.endpoint_url);
	const std::string body = request_payload(config, messages).dump();

	httplib::Client client(url.origin);
	client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(config.request_timeout));
	client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(config.request_timeout));
	client.set_write_timeout(std::chrono::duration_cast<std::chrono::seconds>(config.request_timeout));
	httplib::Headers headers;
	if (!api_key_.empty())
		headers.emplace("Authorization", "Bearer " + api_key_);

	std::chrono::milliseconds delay = config.backoff_initial;
	for (int attempt = 0;; ++attempt) {
		++attempts_;
		auto result = client.Post(url.path, headers, body, "application/json");
		const bool last = attempt >= config.http_retries;
		std::chrono::milliseconds wait = delay;

		if (!result) {
			if (last)
				throw ProviderError(0, "request to " + config.endpoint_url + " failed: " + httplib::to_string(result.error()));
		} else if (result->status == 429 || result->status >= 500) {
			if (last)
				throw ProviderError(result->status, excerpt(result->body));
			if (result->has_header("Retry-After")) {
				try {
					wait = std::chrono::seconds(std::stoi(result->get_header_value("Retry-After")));
				} catch (const std::exception&) {
				}
			}
		} else if (result->status != 200) {
			throw ProviderError(result->status, excerpt(result->body));
		} else {
			try {
				const auto reply = Json::parse(result->body);
				return reply.at("choices").at(0).at("message").at("content").get<std::string>();
			} catch (const Json::exception& e) {
				throw ProviderError(result->status, std::string("malformed chat-completions response: ") + e.what());
			}
		}
		std::this_thread::sleep_for(std::min(wait, config.backoff_max));
		delay = std::min(delay * 2, config.backoff_max);
	}
}

// --- fixtures ---------------------------------------------------------------

FixtureProvider::FixtureProvider(const std::filesystem::path& directory) {
	std::error_code ec;
	if (!std::filesystem::is_directory(directory, ec))
		throw Error(ErrorCategory::usage, "fixture directory not found: " + directory.string());
	for (const auto& entry : std::filesystem::directory_iterator(directory)) {
		if (!entry.is_regular_file() || entry.path().extension() != ".json")
			continue;
		auto content = text::read_file(entry.path());
		if (!content)
			throw Error(ErrorCategory::io, "cannot read fixture " + entry.path().string());
		try {
			const auto record = Json::parse(*content);
			replies_[record.at("request_hash").get<std::string>()] = record.at("reply").get<std::string>();
		} catch (const Json::exception& e) {
			throw Error(ErrorCategory::io, "malformed fixture " + entry.path().string() + ": " + e.what());
		}
	}
}

std::string FixtureProvider::send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) {
	const std::string hash = request_hash(config, messages);
	auto it = replies_.find(hash);
	if (it == replies_.end())
		throw FixtureMiss(hash);
	return it->second;
}

RecordingProvider::RecordingProvider(ChatProvider& inner, std::filesystem::path directory)
	: inner_(inner), directory_(std::move(directory)) {
	std::filesystem::create_directories(directory_);
}

std::string RecordingProvider::send_chat(const ProviderConfig& config, const std::vector<ChatMessage>& messages) {
	std::string reply = inner_.send_chat(config, messages);
	const Json record = fixture_record(config, messages, reply);
	const auto path = directory_ / (record["request_hash"].get<std::string>() + ".json");
	std::lock_guard lock(write_mutex_);
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	out << record.dump(2) << '\n';
	if (!out)
		throw Error(ErrorCategory::io, "cannot write fixture " + path.string());
	++recorded_;
	return reply;
}

} // namespace lrasgen
