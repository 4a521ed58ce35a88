// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lrasgen/json.hpp"

#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lrasgen {

struct MethodEntity {
	std::string path;
	std::string method;
	auto operator<=>(const MethodEntity&) const = default;
};

struct ParameterEntity {
	std::string path;
	std::string method;
	std::string name;
	std::string position;
	auto operator<=>(const ParameterEntity&) const = default;
};

struct ConstraintEntity {
	std::string path;
	std::string method;
	std::string name;
	std::string keyword;
	std::string value; ///< canonical JSON text
	auto operator<=>(const ConstraintEntity&) const = default;
};

struct ResponseEntity {
	std::string path;
	std::string method;
	int status = 0; ///< 0 stands for "default"
	int variant = 0;
	auto operator<=>(const ResponseEntity&) const = default;
};

/// The four entity classes, as found in a document or a ground-truth file.
struct EntitySets {
	std::set<MethodEntity> methods;
	std::set<ParameterEntity> parameters;
	std::set<ConstraintEntity> constraints;
	std::set<ResponseEntity> responses;

	bool operator==(const EntitySets&) const = default;
};

enum class EntityClass { methods, parameters, constraints, responses };
inline constexpr std::array<EntityClass, 4> all_entity_classes{EntityClass::methods, EntityClass::parameters,
															   EntityClass::constraints, EntityClass::responses};
std::string_view to_string(EntityClass c) noexcept;
/// Column heading used in reports ("Endpoint Methods", ...).
std::string_view display_name(EntityClass c) noexcept;

struct ExtractOptionsEval {
	/// Count `required: true` as a constraint entity with keyword "required".
	bool required_as_constraint = true;
};

/// Renames template variables positionally and strips a trailing slash:
/// "/users/{id}/" -> "/users/{p1}".
std::string normalize_path_template(std::string_view path);

/// Canonical value text: compact JSON, integral numbers without a fraction,
/// object keys sorted.
std::string canonical_value(const Json& value);

EntitySets extract_entities(const Json& oas_document, const ExtractOptionsEval& options = {});

/// Reads {"endpoint_methods": [[path, method], ...], "endpoint_parameters":
/// [[path, method, name, position], ...], "parameter_constraints": [[path,
/// method, name, keyword, value], ...], "endpoint_responses": [[path, method,
/// status, variant], ...]}. Entities are normalized like extracted ones.
EntitySets load_ground_truth(const Json& document);
Json to_json(const EntitySets& sets);

struct ClassScore {
	std::size_t tp = 0;
	std::size_t fp = 0;
	std::size_t fn = 0;
	double precision = 0;
	double recall = 0;
	double f1 = 0;
	bool no_identifications = false; ///< tp + fp == 0, precision reported as 1
	bool no_ground_truth = false;    ///< tp + fn == 0, recall reported as 1
};

/// Precision, recall and F1 from raw counts.
ClassScore score_counts(std::size_t tp, std::size_t fp, std::size_t fn);

struct EvalReport {
	std::map<EntityClass, ClassScore> per_class;
	/// Ground-truth entities absent from the evaluated document, as JSON tuples.
	std::map<EntityClass, std::vector<Json>> missed_entities;
	/// Evaluated entities absent from the ground truth.
	std::map<EntityClass, std::vector<Json>> extra_entities;
};

EvalReport score(const EntitySets& generated, const EntitySets& truth);

struct ClassDiff {
	std::size_t generated = 0;
	std::size_t developer = 0;
	std::vector<Json> only_in_generated;
	std::vector<Json> only_in_developer;
};

struct DiffRow {
	std::string api;
	std::map<EntityClass, ClassDiff> per_class;
};

struct DiffReport {
	std::vector<DiffRow> rows;
	/// Per-class totals over all rows.
	std::map<EntityClass, ClassDiff> sum;
};

DiffRow diff_against_developer(const EntitySets& generated, const EntitySets& developer, std::string api = {});
DiffReport make_diff_report(std::vector<DiffRow> rows);

/// Entities present in generated specs but not in developer ones, as a share
/// of the generated total.
struct MissedShare {
	std::size_t missed = 0;
	std::size_t generated = 0;
	double percent = 0;
};
MissedShare missed_by_developer(std::size_t generated_total, std::size_t developer_total);

/// One row of a published per-API count table: developer vs generated counts
/// per class, plus false positives among the generated ones.
struct CountRow {
	std::string api;
	std::map<EntityClass, std::size_t> developer;
	std::map<EntityClass, std::size_t> generated;
	std::map<EntityClass, std::size_t> false_positives;
};

std::vector<CountRow> load_count_table(const Json& document);
/// Diff report over count-only rows; entity lists stay empty.
DiffReport count_diff_report(const std::vector<CountRow>& rows);

std::string format_eval_table(const EvalReport& report);
Json eval_to_json(const EvalReport& report);
std::string format_diff_table(const DiffReport& report);
Json diff_to_json(const DiffReport& report);

} // namespace lrasgen
