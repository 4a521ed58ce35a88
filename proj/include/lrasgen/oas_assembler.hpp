// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"
#include "lrasgen/llm/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lrasgen {

inline constexpr std::string_view oas_version = "3.1.1";

struct OasInfo {
	std::string title = "Generated API";
	std::string version = "1.0.0";
	std::string description;

	bool operator==(const OasInfo&) const = default;
};

struct OasDocument {
	std::string openapi{oas_version};
	OasInfo info;
	Json paths = Json::object();      ///< path -> lowercase method -> operation
	Json components = Json::object(); ///< "schemas" -> name -> schema
	std::vector<std::string> diagnostics;

	/// Canonical form: paths sorted, methods in fixed order, component names sorted.
	Json to_json() const;
	static OasDocument from_json(const Json& document);

	/// Structural equality; diagnostics are not part of the document.
	bool operator==(const OasDocument& other) const;
};

/// Operation keys in emission order.
const std::vector<std::string>& method_order();

/// ConstraintSet fields and the schema keyword each becomes.
struct KeywordMapping {
	std::string_view field;
	std::string_view keyword;
};
const std::vector<KeywordMapping>& constraint_keyword_table();

/// Schema for one parameter: its type plus the mapped constraint keywords.
/// `required` is a property of the parameter object and is not emitted here.
Json constraint_to_schema(const ParameterSpec& param);

/// Structural schema for an example value: objects become properties,
/// arrays take the shape of their first element.
Json infer_schema(const Json& example);

/// Splits a source-level return type into (element type name, is_collection).
/// Wrappers such as ResponseEntity<...> and Optional<...> are removed.
struct ReturnType {
	std::string name;
	bool collection = false;
	bool user_defined = false;
};
ReturnType parse_return_type(std::string_view type);

/// Builds the document. Throws DuplicateEndpoint on a repeated (path, method).
OasDocument assemble(const std::vector<EndpointRecord>& endpoints, const OasInfo& info = {});

enum class OutputFormat { json, yaml };

/// Canonical text: 2-space JSON or block YAML, UTF-8, trailing newline.
std::string serialize(const OasDocument& document, OutputFormat format = OutputFormat::json);

/// Reads JSON, or YAML when the text does not start with '{'.
Json parse_document_text(std::string_view text);

} // namespace lrasgen
