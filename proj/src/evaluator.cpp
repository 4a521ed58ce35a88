// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/evaluator.hpp"

#include "lrasgen/error.hpp"
#include "lrasgen/oas_assembler.hpp"
#include "lrasgen/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lrasgen {

std::string_view to_string(EntityClass c) noexcept {
	switch (c) {
	case EntityClass::methods:
		return "endpoint_methods";
	case EntityClass::parameters:
		return "endpoint_parameters";
	case EntityClass::constraints:
		return "parameter_constraints";
	case EntityClass::responses:
		return "endpoint_responses";
	}
	return "";
}

std::string_view display_name(EntityClass c) noexcept {
	switch (c) {
	case EntityClass::methods:
		return "Endpoint Methods";
	case EntityClass::parameters:
		return "Endpoint Parameters";
	case EntityClass::constraints:
		return "Parameter Constraints";
	case EntityClass::responses:
		return "Endpoint Responses";
	}
	return "";
}

namespace {

// Template variable names in order of appearance.
std::vector<std::string> template_variables(std::string_view path) {
	std::vector<std::string> names;
	for (std::size_t i = 0; i < path.size(); ++i) {
		if (path[i] != '{')
			continue;
		const auto close = path.find('}', i);
		if (close == std::string_view::npos)
			break;
		names.emplace_back(path.substr(i + 1, close - i - 1));
		i = close;
	}
	return names;
}

// Path parameters are renamed to their positional placeholder.
std::string normalize_parameter_name(std::string_view raw_path, const std::string& name, const std::string& position) {
	if (position != "path")
		return name;
	const auto vars = template_variables(raw_path);
	for (std::size_t i = 0; i < vars.size(); ++i)
		if (vars[i] == name)
			return "p" + std::to_string(i + 1);
	return name;
}

const Json* resolve_ref(const Json& doc, const Json& node) {
	const Json* current = &node;
	for (int depth = 0; depth < 16 && current->is_object() && current->contains("$ref"); ++depth) {
		const auto& ref = (*current)["$ref"];
		if (!ref.is_string() || !ref.get<std::string>().starts_with("#/"))
			return current;
		try {
			current = &doc.at(Json::json_pointer(ref.get<std::string>().substr(1)));
		} catch (const Json::exception&) {
			return current;
		}
	}
	return current;
}

std::string upper_method(std::string_view m) {
	return text::to_upper(text::trim(m));
}

} // namespace

std::string normalize_path_template(std::string_view raw) {
	std::string path(text::trim(raw));
	if (path.empty() || path.front() != '/')
		path.insert(path.begin(), '/');
	while (path.size() > 1 && path.back() == '/')
		path.pop_back();
	std::string out;
	int index = 0;
	for (std::size_t i = 0; i < path.size(); ++i) {
		if (path[i] == '{') {
			const auto close = path.find('}', i);
			if (close != std::string::npos) {
				out += "{p" + std::to_string(++index) + "}";
				i = close;
				continue;
			}
		}
		out += path[i];
	}
	return out;
}

std::string canonical_value(const Json& value) {
	switch (value.type()) {
	case Json::value_t::object: {
		std::vector<std::string> keys;
		for (auto it = value.begin(); it != value.end(); ++it)
			keys.push_back(it.key());
		std::sort(keys.begin(), keys.end());
		std::string s = "{";
		for (std::size_t i = 0; i < keys.size(); ++i) {
			if (i)
				s += ",";
			s += Json(keys[i]).dump() + ":" + canonical_value(value[keys[i]]);
		}
		return s + "}";
	}
	case Json::value_t::array: {
		std::string s = "[";
		for (std::size_t i = 0; i < value.size(); ++i) {
			if (i)
				s += ",";
			s += canonical_value(value[i]);
		}
		return s + "]";
	}
	case Json::value_t::number_float: {
		const double d = value.get<double>();
		if (std::isfinite(d) && std::floor(d) == d && std::fabs(d) <= 9.0e15)
			return std::to_string(static_cast<std::int64_t>(d));
		return value.dump();
	}
	default:
		return value.dump(-1, ' ', false, Json::error_handler_t::replace);
	}
}

namespace {

// Enum membership is a set: member order does not matter.
std::string canonical_enum(const Json& values) {
	std::vector<std::string> members;
	for (const auto& v : values)
		members.push_back(canonical_value(v));
	std::sort(members.begin(), members.end());
	members.erase(std::unique(members.begin(), members.end()), members.end());
	std::string s = "[";
	for (std::size_t i = 0; i < members.size(); ++i)
		s += (i ? "," : "") + members[i];
	return s + "]";
}

void add_schema_constraints(EntitySets& out, const Json& doc, const std::string& path, const std::string& method,
							const std::string& name, const Json& raw_schema) {
	const Json& schema = *resolve_ref(doc, raw_schema);
	if (!schema.is_object())
		return;
	static const std::vector<std::string> scalar_keywords{"minLength", "maxLength", "format", "minimum", "maximum",
														  "default"};
	for (const auto& k : scalar_keywords)
		if (auto it = schema.find(k); it != schema.end())
			out.constraints.insert({path, method, name, k, canonical_value(*it)});
	if (auto it = schema.find("enum"); it != schema.end() && it->is_array())
		out.constraints.insert({path, method, name, "enum", canonical_enum(*it)});
	else if (auto items = schema.find("items"); items != schema.end() && items->is_object())
		if (auto e = items->find("enum"); e != items->end() && e->is_array())
			out.constraints.insert({path, method, name, "enum", canonical_enum(*e)});
}

void add_required(EntitySets& out, const ExtractOptionsEval& options, const std::string& path,
				  const std::string& method, const std::string& name, bool required) {
	if (options.required_as_constraint && required)
		out.constraints.insert({path, method, name, "required", "true"});
}

int status_number(const std::string& key) {
	if (key == "default")
		return 0;
	try {
		std::size_t used = 0;
		const int n = std::stoi(key, &used);
		if (used == key.size())
			return n;
	} catch (const std::exception&) {
	}
	// "2XX" style ranges are kept distinct from concrete codes.
	if (key.size() == 3 && std::isdigit(static_cast<unsigned char>(key[0])))
		return -(key[0] - '0');
	return -100;
}

} // namespace

EntitySets extract_entities(const Json& doc, const ExtractOptionsEval& options) {
	EntitySets out;
	const auto paths = doc.find("paths");
	if (paths == doc.end() || !paths->is_object())
		return out;
	for (auto p = paths->begin(); p != paths->end(); ++p) {
		const std::string& raw_path = p.key();
		const std::string path = normalize_path_template(raw_path);
		const Json& item = *resolve_ref(doc, *p);
		if (!item.is_object())
			continue;
		for (const auto& m : method_order()) {
			auto op_it = item.find(m);
			if (op_it == item.end() || !op_it->is_object())
				continue;
			const Json& op = *op_it;
			const std::string method = upper_method(m);
			out.methods.insert({path, method});

			std::vector<const Json*> params;
			for (const Json* source : {&item, &op})
				if (auto it = source->find("parameters"); it != source->end() && it->is_array())
					for (const auto& raw : *it)
						params.push_back(resolve_ref(doc, raw));
			for (const Json* param : params) {
				if (!param->is_object() || !param->contains("name") || !param->contains("in"))
					continue;
				const std::string position = (*param)["in"].get<std::string>();
				const std::string pos = position == "formData" ? "body" : position;
				const std::string name = normalize_parameter_name(raw_path, (*param)["name"].get<std::string>(), pos);
				out.parameters.insert({path, method, name, pos});
				add_required(out, options, path, method, name, param->value("required", false));
				if (auto s = param->find("schema"); s != param->end())
					add_schema_constraints(out, doc, path, method, name, *s);
				else
					add_schema_constraints(out, doc, path, method, name, *param); // Swagger 2 inline form
			}

			if (auto rb_it = op.find("requestBody"); rb_it != op.end()) {
				const Json& rb = *resolve_ref(doc, *rb_it);
				const Json* schema = nullptr;
				if (auto c = rb.find("content"); c != rb.end() && c->is_object() && !c->empty()) {
					const Json& media = c->contains("application/json") ? (*c)["application/json"] : c->begin().value();
					if (auto s = media.find("schema"); s != media.end())
						schema = &*s;
				}
				if (auto names = rb.find("x-parameter-names"); names != rb.end() && names->is_array() && schema) {
					const Json& s = *resolve_ref(doc, *schema);
					std::set<std::string> required;
					if (auto r = s.find("required"); r != s.end() && r->is_array())
						for (const auto& n : *r)
							required.insert(n.get<std::string>());
					for (const auto& n : *names) {
						const std::string name = n.get<std::string>();
						out.parameters.insert({path, method, name, "body"});
						add_required(out, options, path, method, name, required.count(name) > 0);
						if (auto props = s.find("properties"); props != s.end() && props->contains(name))
							add_schema_constraints(out, doc, path, method, name, (*props)[name]);
					}
				} else {
					const std::string name = rb.value("x-parameter-name", std::string("body"));
					out.parameters.insert({path, method, name, "body"});
					add_required(out, options, path, method, name, rb.value("required", false));
					if (schema && rb.contains("x-parameter-name"))
						add_schema_constraints(out, doc, path, method, name, *schema);
				}
			}

			if (auto rs = op.find("responses"); rs != op.end() && rs->is_object()) {
				for (auto r = rs->begin(); r != rs->end(); ++r) {
					const Json& resp = *resolve_ref(doc, *r);
					int variants = 1;
					if (auto v = resp.find("x-response-variants"); v != resp.end() && v->is_array() && !v->empty())
						variants = static_cast<int>(v->size());
					for (int i = 0; i < variants; ++i)
						out.responses.insert({path, method, status_number(r.key()), i});
				}
			}
		}
	}
	return out;
}

// --- ground truth ---------------------------------------------------------------

namespace {

const Json& tuple_list(const Json& doc, const char* key) {
	static const Json empty = Json::array();
	auto it = doc.find(key);
	if (it == doc.end() || it->is_null())
		return empty;
	if (!it->is_array())
		throw SchemaViolation(std::string("ground truth: '") + key + "' must be an array");
	return *it;
}

std::string tuple_string(const Json& tuple, std::size_t i, const char* key) {
	if (!tuple.is_array() || tuple.size() <= i || !tuple[i].is_string())
		throw SchemaViolation(std::string("ground truth: entry ") + tuple.dump() + " in '" + key +
							  "' needs a string at position " + std::to_string(i));
	return tuple[i].get<std::string>();
}

} // namespace

EntitySets load_ground_truth(const Json& doc) {
	if (!doc.is_object())
		throw SchemaViolation("ground truth must be a JSON object");
	EntitySets out;
	for (const auto& t : tuple_list(doc, "endpoint_methods"))
		out.methods.insert({normalize_path_template(tuple_string(t, 0, "endpoint_methods")),
							upper_method(tuple_string(t, 1, "endpoint_methods"))});
	for (const auto& t : tuple_list(doc, "endpoint_parameters")) {
		const std::string raw = tuple_string(t, 0, "endpoint_parameters");
		const std::string position = tuple_string(t, 3, "endpoint_parameters");
		out.parameters.insert({normalize_path_template(raw), upper_method(tuple_string(t, 1, "endpoint_parameters")),
							   normalize_parameter_name(raw, tuple_string(t, 2, "endpoint_parameters"), position),
							   position});
	}
	for (const auto& t : tuple_list(doc, "parameter_constraints")) {
		if (!t.is_array() || t.size() < 5)
			throw SchemaViolation("ground truth: constraint entry " + t.dump() + " needs 5 fields");
		const std::string raw = tuple_string(t, 0, "parameter_constraints");
		const std::string keyword = tuple_string(t, 3, "parameter_constraints");
		std::string name = tuple_string(t, 2, "parameter_constraints");
		// A constraint on a path parameter follows the parameter's renaming.
		for (const auto& v : template_variables(raw))
			if (v == name)
				name = normalize_parameter_name(raw, name, "path");
		out.constraints.insert({normalize_path_template(raw), upper_method(tuple_string(t, 1, "parameter_constraints")),
								name, keyword, keyword == "enum" && t[4].is_array() ? canonical_enum(t[4]) : canonical_value(t[4])});
	}
	for (const auto& t : tuple_list(doc, "endpoint_responses")) {
		if (!t.is_array() || t.size() < 3)
			throw SchemaViolation("ground truth: response entry " + t.dump() + " needs at least 3 fields");
		int status = 0;
		if (t[2].is_number_integer())
			status = t[2].get<int>();
		else if (t[2].is_string())
			status = status_number(t[2].get<std::string>());
		else
			throw SchemaViolation("ground truth: status in " + t.dump() + " must be a number or string");
		const int variant = t.size() > 3 && t[3].is_number_integer() ? t[3].get<int>() : 0;
		out.responses.insert({normalize_path_template(tuple_string(t, 0, "endpoint_responses")),
							  upper_method(tuple_string(t, 1, "endpoint_responses")), status, variant});
	}
	return out;
}

namespace {

Json entity_json(const MethodEntity& e) {
	return Json::array({e.path, e.method});
}
Json entity_json(const ParameterEntity& e) {
	return Json::array({e.path, e.method, e.name, e.position});
}
Json entity_json(const ConstraintEntity& e) {
	Json value;
	try {
		value = Json::parse(e.value);
	} catch (const Json::exception&) {
		value = e.value;
	}
	return Json::array({e.path, e.method, e.name, e.keyword, value});
}
Json entity_json(const ResponseEntity& e) {
	return Json::array({e.path, e.method, e.status == 0 ? Json("default") : Json(e.status), e.variant});
}

template <typename T>
Json set_json(const std::set<T>& s) {
	Json out = Json::array();
	for (const auto& e : s)
		out.push_back(entity_json(e));
	return out;
}

template <typename T>
void difference(const std::set<T>& a, const std::set<T>& b, std::vector<Json>& out) {
	std::vector<T> diff;
	std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
	for (const auto& e : diff)
		out.push_back(entity_json(e));
}

template <typename T>
std::size_t intersection_size(const std::set<T>& a, const std::set<T>& b) {
	std::size_t n = 0;
	for (const auto& e : a)
		n += b.count(e);
	return n;
}

template <typename Fn>
void for_each_class(const EntitySets& a, const EntitySets& b, Fn&& fn) {
	fn(EntityClass::methods, a.methods, b.methods);
	fn(EntityClass::parameters, a.parameters, b.parameters);
	fn(EntityClass::constraints, a.constraints, b.constraints);
	fn(EntityClass::responses, a.responses, b.responses);
}

std::string fixed2(double v) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.2f", v);
	return buf;
}

std::string pad(std::string s, std::size_t width, bool right = false) {
	if (s.size() >= width)
		return s;
	return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

} // namespace

Json to_json(const EntitySets& sets) {
	Json out = Json::object();
	out["endpoint_methods"] = set_json(sets.methods);
	out["endpoint_parameters"] = set_json(sets.parameters);
	out["parameter_constraints"] = set_json(sets.constraints);
	out["endpoint_responses"] = set_json(sets.responses);
	return out;
}

// --- scoring ------------------------------------------------------------------

ClassScore score_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
	ClassScore s;
	s.tp = tp;
	s.fp = fp;
	s.fn = fn;
	s.no_identifications = tp + fp == 0;
	s.no_ground_truth = tp + fn == 0;
	s.precision = s.no_identifications ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
	s.recall = s.no_ground_truth ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
	s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
	return s;
}

EvalReport score(const EntitySets& generated, const EntitySets& truth) {
	EvalReport report;
	for_each_class(generated, truth, [&](EntityClass c, const auto& gen, const auto& gt) {
		const std::size_t tp = intersection_size(gen, gt);
		report.per_class[c] = score_counts(tp, gen.size() - tp, gt.size() - tp);
		difference(gt, gen, report.missed_entities[c]);
		difference(gen, gt, report.extra_entities[c]);
	});
	return report;
}

// --- developer diff -------------------------------------------------------------

DiffRow diff_against_developer(const EntitySets& generated, const EntitySets& developer, std::string api) {
	DiffRow row;
	row.api = std::move(api);
	for_each_class(generated, developer, [&](EntityClass c, const auto& gen, const auto& dev) {
		ClassDiff& d = row.per_class[c];
		d.generated = gen.size();
		d.developer = dev.size();
		difference(gen, dev, d.only_in_generated);
		difference(dev, gen, d.only_in_developer);
	});
	return row;
}

DiffReport make_diff_report(std::vector<DiffRow> rows) {
	DiffReport report;
	report.rows = std::move(rows);
	for (EntityClass c : all_entity_classes)
		report.sum[c] = {};
	for (const auto& row : report.rows)
		for (const auto& [c, d] : row.per_class) {
			ClassDiff& s = report.sum[c];
			s.generated += d.generated;
			s.developer += d.developer;
			s.only_in_generated.insert(s.only_in_generated.end(), d.only_in_generated.begin(), d.only_in_generated.end());
			s.only_in_developer.insert(s.only_in_developer.end(), d.only_in_developer.begin(), d.only_in_developer.end());
		}
	return report;
}

MissedShare missed_by_developer(std::size_t generated_total, std::size_t developer_total) {
	MissedShare m;
	m.generated = generated_total;
	m.missed = generated_total > developer_total ? generated_total - developer_total : 0;
	m.percent = generated_total ? 100.0 * static_cast<double>(m.missed) / static_cast<double>(generated_total) : 0.0;
	return m;
}

std::vector<CountRow> load_count_table(const Json& doc) {
	const Json& rows = doc.is_object() && doc.contains("rows") ? doc["rows"] : doc;
	if (!rows.is_array())
		throw SchemaViolation("count table must be an array of rows");
	std::vector<CountRow> out;
	for (const auto& r : rows) {
		CountRow row;
		row.api = r.at("api").get<std::string>();
		for (EntityClass c : all_entity_classes) {
			const Json& cell = r.at(std::string(to_string(c)));
			row.developer[c] = cell.at("developer").get<std::size_t>();
			row.generated[c] = cell.at("generated").get<std::size_t>();
			row.false_positives[c] = cell.value("false_positives", std::size_t{0});
		}
		out.push_back(std::move(row));
	}
	return out;
}

DiffReport count_diff_report(const std::vector<CountRow>& rows) {
	std::vector<DiffRow> diff_rows;
	for (const auto& r : rows) {
		DiffRow d;
		d.api = r.api;
		for (EntityClass c : all_entity_classes) {
			d.per_class[c].generated = r.generated.at(c);
			d.per_class[c].developer = r.developer.at(c);
		}
		diff_rows.push_back(std::move(d));
	}
	return make_diff_report(std::move(diff_rows));
}

// --- presentation ---------------------------------------------------------------

std::string format_eval_table(const EvalReport& report) {
	std::ostringstream out;
	out << pad("Entity class", 24) << pad("TP", 6, true) << pad("FP", 6, true) << pad("FN", 6, true)
		<< pad("Precision", 11, true) << pad("Recall", 8, true) << pad("F1", 6, true) << '\n';
	for (EntityClass c : all_entity_classes) {
		auto it = report.per_class.find(c);
		if (it == report.per_class.end())
			continue;
		const ClassScore& s = it->second;
		out << pad(std::string(display_name(c)), 24) << pad(std::to_string(s.tp), 6, true)
			<< pad(std::to_string(s.fp), 6, true) << pad(std::to_string(s.fn), 6, true)
			<< pad(fixed2(s.precision), 11, true) << pad(fixed2(s.recall), 8, true) << pad(fixed2(s.f1), 6, true);
		if (s.no_identifications)
			out << "  (no identifications)";
		if (s.no_ground_truth)
			out << "  (empty ground truth)";
		out << '\n';
	}
	return out.str();
}

Json eval_to_json(const EvalReport& report) {
	Json out = Json::object();
	for (EntityClass c : all_entity_classes) {
		auto it = report.per_class.find(c);
		if (it == report.per_class.end())
			continue;
		const ClassScore& s = it->second;
		Json j{{"tp", s.tp},
			   {"fp", s.fp},
			   {"fn", s.fn},
			   {"precision", s.precision},
			   {"recall", s.recall},
			   {"f1", s.f1},
			   {"no_identifications", s.no_identifications},
			   {"no_ground_truth", s.no_ground_truth}};
		auto missed = report.missed_entities.find(c);
		j["missed_entities"] = missed == report.missed_entities.end() ? Json::array() : Json(missed->second);
		auto extra = report.extra_entities.find(c);
		j["extra_entities"] = extra == report.extra_entities.end() ? Json::array() : Json(extra->second);
		out[std::string(to_string(c))] = std::move(j);
	}
	return out;
}

std::string format_diff_table(const DiffReport& report) {
	std::ostringstream out;
	std::size_t name_width = 8;
	for (const auto& r : report.rows)
		name_width = std::max(name_width, r.api.size() + 2);
	const auto cell = [](const ClassDiff& d) { return std::to_string(d.developer) + " / " + std::to_string(d.generated); };
	out << pad("API", name_width);
	for (EntityClass c : all_entity_classes)
		out << pad(std::string(display_name(c)), 24, true);
	out << '\n' << pad("", name_width);
	for (std::size_t i = 0; i < all_entity_classes.size(); ++i)
		out << pad("dev / gen", 24, true);
	out << '\n';
	const auto line = [&](const std::string& name, const std::map<EntityClass, ClassDiff>& per_class) {
		out << pad(name, name_width);
		for (EntityClass c : all_entity_classes) {
			auto it = per_class.find(c);
			out << pad(it == per_class.end() ? "-" : cell(it->second), 24, true);
		}
		out << '\n';
	};
	for (const auto& r : report.rows)
		line(r.api.empty() ? "(spec)" : r.api, r.per_class);
	if (report.rows.size() > 1)
		line("Sum", report.sum);
	out << '\n';
	for (EntityClass c : all_entity_classes) {
		const ClassDiff& s = report.sum.at(c);
		const MissedShare m = missed_by_developer(s.generated, s.developer);
		char buf[64];
		std::snprintf(buf, sizeof buf, "%.2f%%", m.percent);
		out << "Missed by developer spec: " << m.missed << " (out of " << m.generated << ", " << buf << ") "
			<< text::to_lower(display_name(c)) << '\n';
	}
	return out.str();
}

Json diff_to_json(const DiffReport& report) {
	const auto class_json = [](const std::map<EntityClass, ClassDiff>& per_class) {
		Json j = Json::object();
		for (EntityClass c : all_entity_classes) {
			auto it = per_class.find(c);
			if (it == per_class.end())
				continue;
			const ClassDiff& d = it->second;
			j[std::string(to_string(c))] = Json{{"developer", d.developer},
												{"generated", d.generated},
												{"only_in_generated", d.only_in_generated},
												{"only_in_developer", d.only_in_developer}};
		}
		return j;
	};
	Json out = Json::object();
	out["rows"] = Json::array();
	for (const auto& r : report.rows)
		out["rows"].push_back(Json{{"api", r.api}, {"classes", class_json(r.per_class)}});
	out["sum"] = class_json(report.sum);
	Json missed = Json::object();
	for (EntityClass c : all_entity_classes) {
		const ClassDiff& s = report.sum.at(c);
		const MissedShare m = missed_by_developer(s.generated, s.developer);
		missed[std::string(to_string(c))] = Json{{"missed", m.missed}, {"generated", m.generated}, {"percent", m.percent}};
	}
	out["missed_by_developer"] = std::move(missed);
	return out;
}

} // namespace lrasgen
