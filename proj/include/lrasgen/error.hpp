// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lrasgen {

/// Broad failure classes; the CLI maps each to a distinct exit status.
enum class ErrorCategory {
	usage,
	scan,
	provider,
	schema,
	assembly,
	io,
};

const char* to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
public:
	Error(ErrorCategory category, const std::string& message)
		: std::runtime_error(message), category_(category) {}

	ErrorCategory category() const noexcept { return category_; }

private:
	ErrorCategory category_;
};

class MalformedCriteria : public Error {
public:
	MalformedCriteria(std::string record, std::string field, const std::string& detail)
		: Error(ErrorCategory::usage,
				"malformed criteria '" + record + "', field '" + field + "': " + detail),
		  record_(std::move(record)), field_(std::move(field)) {}

	const std::string& record() const noexcept { return record_; }
	const std::string& field() const noexcept { return field_; }

private:
	std::string record_;
	std::string field_;
};

class RootNotFound : public Error {
public:
	explicit RootNotFound(const std::string& root)
		: Error(ErrorCategory::scan, "project root not found or not a directory: " + root) {}
};

class NoJsonFound : public Error {
public:
	explicit NoJsonFound(const std::string& detail)
		: Error(ErrorCategory::schema, "no JSON value found in reply: " + detail) {}
};

class SchemaViolation : public Error {
public:
	explicit SchemaViolation(const std::string& detail)
		: Error(ErrorCategory::schema, detail) {}
};

class ProviderError : public Error {
public:
	ProviderError(int status, const std::string& detail)
		: Error(ErrorCategory::provider,
				status > 0 ? "provider returned HTTP " + std::to_string(status) + ": " + detail
						   : "provider error: " + detail),
		  status_(status) {}

	/// HTTP status, or 0 for transport failures.
	int status() const noexcept { return status_; }

private:
	int status_;
};

class FixtureMiss : public Error {
public:
	explicit FixtureMiss(std::string hash)
		: Error(ErrorCategory::provider, "no recorded fixture for request " + hash),
		  hash_(std::move(hash)) {}

	const std::string& hash() const noexcept { return hash_; }

private:
	std::string hash_;
};

class ConstraintContradiction : public Error {
public:
	explicit ConstraintContradiction(const std::string& detail)
		: Error(ErrorCategory::schema, detail) {}
};

class DuplicateEndpoint : public Error {
public:
	DuplicateEndpoint(const std::string& path, const std::string& method)
		: Error(ErrorCategory::assembly, "duplicate endpoint " + method + " " + path) {}
};

} // namespace lrasgen
