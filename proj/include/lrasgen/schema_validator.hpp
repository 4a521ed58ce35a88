// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"
#include "lrasgen/regex.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace lrasgen {

struct SchemaIssue {
	std::string instance_path; ///< JSON pointer into the validated document
	std::string schema_path;   ///< JSON pointer into the schema
	std::string message;
};

/// JSON Schema 2020-12 validator covering the keywords the OAS 3.1 meta-schema
/// uses: $ref/$defs with local pointers, $dynamicRef to a $dynamicAnchor,
/// the applicators, unevaluatedProperties, and the numeric/string/array/object
/// assertions. `format` is an annotation only.
class SchemaValidator {
public:
	explicit SchemaValidator(Json schema);

	std::vector<SchemaIssue> validate(const Json& instance) const;
	bool is_valid(const Json& instance) const { return validate(instance).empty(); }

private:
	struct Outcome;
	Outcome check(const Json& schema, const std::string& schema_path, const Json& instance,
				  const std::string& instance_path) const;
	const Json& resolve_pointer(const std::string& ref, std::string& schema_path) const;
	bool matches(const std::string& pattern, const std::string& text) const;

	Json root_;
	std::map<std::string, std::string> dynamic_anchors_; ///< anchor -> schema pointer
	mutable std::mutex regex_mutex_;
	mutable std::map<std::string, Regex> regex_cache_;
};

/// The bundled OAS 3.1 meta-schema (2022-10-07 revision).
const Json& oas_meta_schema();

/// Validates a whole OpenAPI document against the bundled meta-schema.
std::vector<SchemaIssue> validate_oas(const Json& document);

} // namespace lrasgen
