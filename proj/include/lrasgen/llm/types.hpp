// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrasgen {

/// One (path, HTTP method) operation as reported by the model.
struct EndpointMethod {
	std::string endpoint_path;
	std::string http_method; ///< uppercase
	std::string method_name;

	bool operator==(const EndpointMethod&) const = default;
};

enum class ParamType { string, number, integer, object, array, boolean };
enum class ParamPosition { query, path, header, cookie, body };

std::string_view to_string(ParamType type) noexcept;
std::string_view to_string(ParamPosition position) noexcept;
/// Accepts the closed vocabulary plus common spellings ("int", "str", "bool", "list", ...).
std::optional<ParamType> parse_param_type(std::string_view text);
std::optional<ParamPosition> parse_param_position(std::string_view text);

bool is_http_method(std::string_view upper) noexcept;

struct ConstraintSet {
	std::optional<std::uint64_t> min_length;
	std::optional<std::uint64_t> max_length;
	/// Allowed values, as JSON scalars of the parameter's type.
	std::optional<std::vector<Json>> enumeration;
	std::optional<std::string> format;
	std::optional<double> minimum;
	std::optional<double> maximum;
	std::optional<Json> default_value;

	bool empty() const noexcept;
	bool operator==(const ConstraintSet&) const = default;
};

struct ParameterSpec {
	std::string name;
	ParamType type = ParamType::string;
	bool required = false;
	ParamPosition position = ParamPosition::query;
	std::string description;
	ConstraintSet constraints;

	bool operator==(const ParameterSpec&) const = default;
};

struct ResponseSpec {
	int status_code = 200;
	/// Example instance of the returned data.
	std::optional<Json> return_schema;
	/// Source-level type of the returned data, e.g. "List<ProjectStats>".
	std::optional<std::string> return_type;
	std::optional<std::string> exception;
	std::string description;

	bool operator==(const ResponseSpec&) const = default;
};

/// Everything the three stages learned about one endpoint.
struct EndpointRecord {
	EndpointMethod method;
	std::string summary;
	std::vector<ParameterSpec> parameters;
	std::vector<ResponseSpec> responses;
};

struct ProviderConfig {
	std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
	std::string model = "gpt-4o-mini";
	double temperature = 0.2;
	std::size_t context_window = 128000;
	/// Corrective re-asks after an unusable reply.
	int max_retries = 3;
	std::string api_key_env = "LRASGEN_API_KEY";

	/// Transport-level retries on 429/5xx or connection failure.
	int http_retries = 3;
	std::chrono::milliseconds backoff_initial{500};
	std::chrono::milliseconds backoff_max{30000};
	std::chrono::seconds request_timeout{120};
	std::size_t max_in_flight = 4;
};

struct ChatMessage {
	std::string role;
	std::string content;

	bool operator==(const ChatMessage&) const = default;
};

} // namespace lrasgen
