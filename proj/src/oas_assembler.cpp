// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/oas_assembler.hpp"

#include "lrasgen/error.hpp"
#include "lrasgen/text.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace lrasgen {

const std::vector<std::string>& method_order() {
	static const std::vector<std::string> order{"get", "post", "put", "patch", "delete", "head", "options"};
	return order;
}

const std::vector<KeywordMapping>& constraint_keyword_table() {
	static const std::vector<KeywordMapping> table{
		{"min_length", "minLength"}, {"max_length", "maxLength"}, {"enum", "enum"},
		{"format", "format"},        {"min", "minimum"},          {"max", "maximum"},
		{"default_value", "default"},
	};
	return table;
}

namespace {

Json number_json(double value) {
	if (std::isfinite(value) && std::floor(value) == value && std::fabs(value) <= 9.0e15)
		return static_cast<std::int64_t>(value);
	return value;
}

Json sorted_object(const Json& object) {
	if (!object.is_object())
		return object;
	std::vector<std::string> keys;
	for (auto it = object.begin(); it != object.end(); ++it)
		keys.push_back(it.key());
	std::sort(keys.begin(), keys.end());
	Json out = Json::object();
	for (const auto& k : keys)
		out[k] = object[k];
	return out;
}

std::size_t method_rank(const std::string& method) {
	const auto& order = method_order();
	return static_cast<std::size_t>(std::find(order.begin(), order.end(), method) - order.begin());
}

std::string sanitize_component_name(std::string_view name) {
	std::string out;
	for (char c : name) {
		const auto u = static_cast<unsigned char>(c);
		out += (std::isalnum(u) || c == '.' || c == '-' || c == '_') ? c : '_';
	}
	if (out.empty())
		out = "Schema";
	return out;
}

std::string operation_id_base(const EndpointMethod& method) {
	std::string name(text::trim(std::string_view(method.method_name).substr(0, method.method_name.find('('))));
	if (auto dot = name.rfind('.'); dot != std::string::npos)
		name = name.substr(dot + 1);
	if (!name.empty())
		return name;
	std::string derived = text::to_lower(method.http_method);
	for (char c : method.endpoint_path)
		derived += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
	return derived;
}

std::string trim_text(std::string_view s) {
	return std::string(text::trim(s));
}

} // namespace

// --- return types -------------------------------------------------------------

ReturnType parse_return_type(std::string_view raw) {
	static const std::set<std::string, std::less<>> wrappers{
		"ResponseEntity", "Optional", "Mono", "CompletableFuture", "CompletionStage", "Future", "Task",
		"ActionResult", "Response", "HttpEntity", "DeferredResult", "Callable", "ValueTask", "Uni"};
	static const std::set<std::string, std::less<>> collections{
		"List", "ArrayList", "LinkedList", "Set", "HashSet", "TreeSet", "SortedSet", "Collection", "Iterable",
		"Flux", "Stream", "Page", "Slice", "IEnumerable", "IList", "ICollection", "IReadOnlyList",
		"IReadOnlyCollection", "list", "set", "tuple", "Sequence", "Iterator", "Multi", "Array"};
	static const std::set<std::string, std::less<>> primitives{
		"String", "string", "str", "CharSequence", "char", "Character", "int", "Integer", "long", "Long",
		"short", "Short", "byte", "Byte", "BigInteger", "int32", "int64", "Int32", "Int64", "double",
		"Double", "float", "Float", "BigDecimal", "decimal", "Decimal", "Number", "bool", "Boolean",
		"boolean", "Object", "object", "Any", "any", "Map", "HashMap", "TreeMap", "LinkedHashMap", "dict",
		"Dict", "Dictionary", "IDictionary", "JsonNode", "ObjectNode", "JSONObject", "void", "Void", "None",
		"IActionResult", "HttpResponse", "JsonResponse", "Date", "LocalDate", "LocalDateTime", "Instant",
		"ZonedDateTime", "OffsetDateTime", "DateTime", "UUID", "Guid", "byte[]", "bytes", "Resource"};

	ReturnType result;
	std::string type = trim_text(raw);
	for (bool changed = true; changed;) {
		changed = false;
		type = trim_text(type);
		if (type.size() > 2 && type.ends_with("[]") && type != "byte[]") {
			type.resize(type.size() - 2);
			result.collection = true;
			changed = true;
			continue;
		}
		const auto open = type.find_first_of("<[");
		if (open == std::string::npos || open == 0)
			break;
		const char close = type[open] == '<' ? '>' : ']';
		if (type.back() != close)
			break;
		const std::string outer = trim_text(std::string_view(type).substr(0, open));
		const std::string simple = outer.substr(outer.rfind('.') == std::string::npos ? 0 : outer.rfind('.') + 1);
		std::string inner = type.substr(open + 1, type.size() - open - 2);
		if (wrappers.count(simple)) {
			type = inner;
			changed = true;
		} else if (collections.count(simple) || simple == "List_" || text::to_lower(simple) == "list") {
			type = inner;
			result.collection = true;
			changed = true;
		} else if (primitives.count(simple)) {
			type = simple; // Map<K, V> and friends are plain objects
			changed = true;
		}
	}
	if (auto dot = type.rfind('.'); dot != std::string::npos && type.find('<') == std::string::npos)
		type = type.substr(dot + 1);
	result.name = type;
	result.user_defined = !type.empty() && !primitives.count(type) && type.find_first_of("<>[]?,") == std::string::npos;
	return result;
}

namespace {

Json primitive_schema(const std::string& name) {
	static const std::map<std::string, Json, std::less<>> map{
		{"String", {{"type", "string"}}},
		{"string", {{"type", "string"}}},
		{"str", {{"type", "string"}}},
		{"CharSequence", {{"type", "string"}}},
		{"char", {{"type", "string"}}},
		{"Character", {{"type", "string"}}},
		{"UUID", {{"type", "string"}, {"format", "uuid"}}},
		{"Guid", {{"type", "string"}, {"format", "uuid"}}},
		{"Date", {{"type", "string"}, {"format", "date-time"}}},
		{"LocalDate", {{"type", "string"}, {"format", "date"}}},
		{"LocalDateTime", {{"type", "string"}, {"format", "date-time"}}},
		{"Instant", {{"type", "string"}, {"format", "date-time"}}},
		{"ZonedDateTime", {{"type", "string"}, {"format", "date-time"}}},
		{"OffsetDateTime", {{"type", "string"}, {"format", "date-time"}}},
		{"DateTime", {{"type", "string"}, {"format", "date-time"}}},
		{"int", {{"type", "integer"}}},
		{"Integer", {{"type", "integer"}}},
		{"long", {{"type", "integer"}}},
		{"Long", {{"type", "integer"}}},
		{"short", {{"type", "integer"}}},
		{"Short", {{"type", "integer"}}},
		{"byte", {{"type", "integer"}}},
		{"Byte", {{"type", "integer"}}},
		{"BigInteger", {{"type", "integer"}}},
		{"int32", {{"type", "integer"}}},
		{"int64", {{"type", "integer"}}},
		{"Int32", {{"type", "integer"}}},
		{"Int64", {{"type", "integer"}}},
		{"double", {{"type", "number"}}},
		{"Double", {{"type", "number"}}},
		{"float", {{"type", "number"}}},
		{"Float", {{"type", "number"}}},
		{"BigDecimal", {{"type", "number"}}},
		{"decimal", {{"type", "number"}}},
		{"Decimal", {{"type", "number"}}},
		{"Number", {{"type", "number"}}},
		{"bool", {{"type", "boolean"}}},
		{"Boolean", {{"type", "boolean"}}},
		{"boolean", {{"type", "boolean"}}},
		{"byte[]", {{"type", "string"}, {"format", "binary"}}},
		{"bytes", {{"type", "string"}, {"format", "binary"}}},
		{"Resource", {{"type", "string"}, {"format", "binary"}}},
	};
	if (auto it = map.find(name); it != map.end())
		return it->second;
	return {{"type", "object"}};
}

bool is_void(const std::string& name) {
	return name == "void" || name == "Void" || name == "None";
}

} // namespace

Json infer_schema(const Json& example) {
	switch (example.type()) {
	case Json::value_t::object: {
		Json schema{{"type", "object"}};
		Json properties = Json::object();
		for (auto it = example.begin(); it != example.end(); ++it)
			properties[it.key()] = infer_schema(*it);
		if (!properties.empty())
			schema["properties"] = std::move(properties);
		return schema;
	}
	case Json::value_t::array: {
		Json schema{{"type", "array"}};
		if (!example.empty())
			schema["items"] = infer_schema(example.front());
		return schema;
	}
	case Json::value_t::string:
		return {{"type", "string"}};
	case Json::value_t::boolean:
		return {{"type", "boolean"}};
	case Json::value_t::number_integer:
	case Json::value_t::number_unsigned:
		return {{"type", "integer"}};
	case Json::value_t::number_float:
		return {{"type", "number"}};
	default:
		return {{"type", "null"}};
	}
}

Json constraint_to_schema(const ParameterSpec& param) {
	Json schema{{"type", std::string(to_string(param.type))}};
	const ConstraintSet& c = param.constraints;
	if (c.min_length)
		schema["minLength"] = *c.min_length;
	if (c.max_length)
		schema["maxLength"] = *c.max_length;
	if (c.enumeration) {
		Json values = Json::array();
		for (const auto& v : *c.enumeration)
			values.push_back(v);
		if (param.type == ParamType::array)
			schema["items"] = Json{{"enum", std::move(values)}};
		else
			schema["enum"] = std::move(values);
	}
	if (c.format)
		schema["format"] = *c.format;
	if (c.minimum)
		schema["minimum"] = number_json(*c.minimum);
	if (c.maximum)
		schema["maximum"] = number_json(*c.maximum);
	if (c.default_value)
		schema["default"] = *c.default_value;
	return schema;
}

// --- assembly -----------------------------------------------------------------

namespace {

class Assembler {
public:
	explicit Assembler(OasDocument& doc) : doc_(doc) {}

	void add(const EndpointRecord& record) {
		std::string path = trim_text(record.method.endpoint_path);
		if (path.empty() || path.front() != '/')
			path.insert(path.begin(), '/');
		const std::string method = text::to_lower(record.method.http_method);
		if (method_rank(method) == method_order().size())
			throw Error(ErrorCategory::assembly, "unsupported HTTP method '" + record.method.http_method + "' for " + path);
		if (!seen_.emplace(path, method).second)
			throw DuplicateEndpoint(path, record.method.http_method);

		Json operation = Json::object();
		if (!text::trim(record.summary).empty())
			operation["summary"] = trim_text(record.summary);
		operation["operationId"] = unique_operation_id(operation_id_base(record.method));

		Json parameters = Json::array();
		std::vector<const ParameterSpec*> body;
		for (const auto& p : record.parameters) {
			if (p.position == ParamPosition::body) {
				body.push_back(&p);
				continue;
			}
			Json param{{"name", p.name}, {"in", std::string(to_string(p.position))}};
			if (!text::trim(p.description).empty())
				param["description"] = trim_text(p.description);
			param["required"] = p.position == ParamPosition::path ? true : p.required;
			param["schema"] = constraint_to_schema(p);
			parameters.push_back(std::move(param));
		}
		if (!parameters.empty())
			operation["parameters"] = std::move(parameters);
		if (!body.empty())
			operation["requestBody"] = request_body(body);
		operation["responses"] = responses(record, path, method);

		if (!doc_.paths.contains(path))
			doc_.paths[path] = Json::object();
		doc_.paths[path][method] = std::move(operation);
	}

private:
	std::string unique_operation_id(const std::string& base) {
		std::string id = base;
		for (int n = 2; !operation_ids_.insert(id).second; ++n)
			id = base + "_" + std::to_string(n);
		return id;
	}

	static Json request_body(const std::vector<const ParameterSpec*>& body) {
		Json rb = Json::object();
		Json schema;
		bool required = false;
		if (body.size() == 1) {
			const ParameterSpec& p = *body.front();
			if (!text::trim(p.description).empty())
				rb["description"] = trim_text(p.description);
			schema = constraint_to_schema(p);
			required = p.required;
			rb["x-parameter-name"] = p.name;
		} else {
			schema = Json{{"type", "object"}, {"properties", Json::object()}};
			Json names = Json::array();
			for (const auto* p : body) {
				Json property = constraint_to_schema(*p);
				if (!text::trim(p->description).empty())
					property["description"] = trim_text(p->description);
				schema["properties"][p->name] = std::move(property);
				if (p->required) {
					names.push_back(p->name);
					required = true;
				}
			}
			if (!names.empty())
				schema["required"] = std::move(names);
			Json all = Json::array();
			for (const auto* p : body)
				all.push_back(p->name);
			rb["x-parameter-names"] = std::move(all);
		}
		rb["content"] = Json{{"application/json", Json{{"schema", std::move(schema)}}}};
		rb["required"] = required;
		return rb;
	}

	// Registers a named component; a same-named object shape is merged, an
	// incompatible one gets a numeric suffix.
	std::string register_component(const std::string& wanted, Json schema) {
		Json& schemas = doc_.components["schemas"];
		if (!schemas.is_object())
			schemas = Json::object();
		std::string name = wanted;
		for (int n = 2;; ++n) {
			if (!schemas.contains(name)) {
				if (name != wanted)
					doc_.diagnostics.push_back("component name '" + wanted + "' already holds a different shape; using '" +
											   name + "'");
				schemas[name] = std::move(schema);
				return name;
			}
			Json& existing = schemas[name];
			if (existing == schema)
				return name;
			if (existing.value("type", "") == "object" && schema.value("type", "") == "object") {
				if (schema.contains("properties")) {
					Json& props = existing["properties"];
					if (!props.is_object())
						props = Json::object();
					for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
						if (!props.contains(it.key()))
							props[it.key()] = *it;
				}
				if (!existing.contains("examples") && schema.contains("examples"))
					existing["examples"] = schema["examples"];
				return name;
			}
			name = wanted + "_" + std::to_string(n);
		}
	}

	std::optional<Json> response_schema(const ResponseSpec& r) {
		std::optional<ReturnType> rt;
		if (r.return_type)
			rt = parse_return_type(*r.return_type);
		if (rt && is_void(rt->name) && !rt->collection)
			return std::nullopt;

		std::optional<Json> element_example;
		if (r.return_schema) {
			const Json& ex = *r.return_schema;
			if (ex.is_array())
				element_example = ex.empty() ? std::nullopt : std::optional<Json>(ex.front());
			else
				element_example = ex;
		}
		if (rt && rt->user_defined) {
			Json shape = element_example ? infer_schema(*element_example) : Json{{"type", "object"}};
			if (element_example)
				shape["examples"] = Json::array({*element_example});
			const std::string name = register_component(sanitize_component_name(rt->name), std::move(shape));
			Json ref{{"$ref", "#/components/schemas/" + name}};
			if (rt->collection)
				return Json{{"type", "array"}, {"items", std::move(ref)}};
			return ref;
		}
		if (rt && !rt->name.empty()) {
			Json element = primitive_schema(rt->name);
			Json schema = rt->collection ? Json{{"type", "array"}, {"items", std::move(element)}} : std::move(element);
			if (r.return_schema)
				schema["examples"] = Json::array({*r.return_schema});
			return schema;
		}
		if (r.return_schema) {
			Json schema = infer_schema(*r.return_schema);
			schema["examples"] = Json::array({*r.return_schema});
			return schema;
		}
		return std::nullopt;
	}

	static std::string variant_text(const ResponseSpec& r) {
		std::string s = trim_text(r.description);
		if (r.exception && !text::trim(*r.exception).empty() && s.find(*r.exception) == std::string::npos) {
			if (!s.empty())
				s += " ";
			s += "(exception: " + trim_text(*r.exception) + ")";
		}
		return s;
	}

	Json responses(const EndpointRecord& record, const std::string& path, const std::string& method) {
		std::map<int, std::vector<const ResponseSpec*>> by_code;
		for (const auto& r : record.responses)
			by_code[r.status_code].push_back(&r);
		Json out = Json::object();
		if (by_code.empty()) {
			out["default"] = Json{{"description", "No response information identified"}};
			doc_.diagnostics.push_back("no responses identified for " + text::to_upper(method) + " " + path +
									   "; emitted a default response");
			return out;
		}
		for (const auto& [code, variants] : by_code) {
			Json response = Json::object();
			std::string description;
			std::optional<Json> content_schema;
			Json variant_list = Json::array();
			for (const auto* r : variants) {
				const std::string text = variant_text(*r);
				if (!text.empty()) {
					if (!description.empty())
						description += " | ";
					description += text;
				}
				std::optional<Json> schema = response_schema(*r);
				Json v = Json::object();
				v["description"] = text;
				if (r->exception)
					v["exception"] = *r->exception;
				if (schema)
					v["schema"] = *schema;
				variant_list.push_back(std::move(v));
				if (schema && !content_schema)
					content_schema = std::move(schema);
			}
			response["description"] = description.empty() ? "HTTP " + std::to_string(code) + " response" : description;
			if (content_schema)
				response["content"] = Json{{"application/json", Json{{"schema", std::move(*content_schema)}}}};
			if (variants.size() > 1)
				response["x-response-variants"] = std::move(variant_list);
			out[std::to_string(code)] = std::move(response);
		}
		return out;
	}

	OasDocument& doc_;
	std::set<std::pair<std::string, std::string>> seen_;
	std::set<std::string> operation_ids_;
};

} // namespace

OasDocument assemble(const std::vector<EndpointRecord>& endpoints, const OasInfo& info) {
	OasDocument doc;
	doc.info = info;
	Assembler assembler(doc);
	for (const auto& e : endpoints)
		assembler.add(e);
	return doc;
}

// --- document form --------------------------------------------------------------

Json OasDocument::to_json() const {
	Json out = Json::object();
	out["openapi"] = openapi;
	Json i{{"title", info.title}, {"version", info.version}};
	if (!info.description.empty())
		i["description"] = info.description;
	out["info"] = std::move(i);

	Json sorted_paths = Json::object();
	const Json by_path = sorted_object(paths);
	for (auto it = by_path.begin(); it != by_path.end(); ++it) {
		const std::string& path = it.key();
		const Json& item = *it;
		std::vector<std::string> methods;
		for (auto it = item.begin(); it != item.end(); ++it)
			methods.push_back(it.key());
		std::stable_sort(methods.begin(), methods.end(), [](const std::string& a, const std::string& b) {
			const auto ra = method_rank(a), rb = method_rank(b);
			return ra != rb ? ra < rb : a < b;
		});
		Json ordered = Json::object();
		for (const auto& m : methods)
			ordered[m] = item[m];
		sorted_paths[path] = std::move(ordered);
	}
	out["paths"] = std::move(sorted_paths);

	if (components.is_object() && !components.empty()) {
		Json c = components;
		if (c.contains("schemas"))
			c["schemas"] = sorted_object(c["schemas"]);
		out["components"] = std::move(c);
	}
	return out;
}

OasDocument OasDocument::from_json(const Json& document) {
	if (!document.is_object())
		throw SchemaViolation("an OpenAPI document must be a JSON object");
	OasDocument doc;
	doc.openapi = document.value("openapi", std::string(oas_version));
	if (auto it = document.find("info"); it != document.end() && it->is_object()) {
		doc.info.title = it->value("title", std::string{});
		doc.info.version = it->value("version", std::string{});
		doc.info.description = it->value("description", std::string{});
	}
	if (auto it = document.find("paths"); it != document.end() && it->is_object())
		doc.paths = *it;
	if (auto it = document.find("components"); it != document.end() && it->is_object())
		doc.components = *it;
	return doc;
}

bool OasDocument::operator==(const OasDocument& other) const {
	return to_json() == other.to_json();
}

// --- text ---------------------------------------------------------------------

namespace {

void emit_yaml(YAML::Emitter& out, const Json& value) {
	switch (value.type()) {
	case Json::value_t::object:
		out << YAML::BeginMap;
		for (auto it = value.begin(); it != value.end(); ++it) {
			out << YAML::Key << YAML::DoubleQuoted << it.key() << YAML::Value;
			emit_yaml(out, *it);
		}
		out << YAML::EndMap;
		break;
	case Json::value_t::array:
		out << YAML::BeginSeq;
		for (const auto& v : value)
			emit_yaml(out, v);
		out << YAML::EndSeq;
		break;
	case Json::value_t::string:
		out << YAML::DoubleQuoted << value.get<std::string>();
		break;
	case Json::value_t::boolean:
		out << YAML::TrueFalseBool << value.get<bool>();
		break;
	case Json::value_t::number_integer:
		out << value.get<std::int64_t>();
		break;
	case Json::value_t::number_unsigned:
		out << value.get<std::uint64_t>();
		break;
	case Json::value_t::number_float:
		out << value.dump();
		break;
	default:
		out << YAML::Null;
		break;
	}
}

Json yaml_to_json(const YAML::Node& node) {
	switch (node.Type()) {
	case YAML::NodeType::Map: {
		Json out = Json::object();
		for (const auto& kv : node)
			out[kv.first.as<std::string>()] = yaml_to_json(kv.second);
		return out;
	}
	case YAML::NodeType::Sequence: {
		Json out = Json::array();
		for (const auto& v : node)
			out.push_back(yaml_to_json(v));
		return out;
	}
	case YAML::NodeType::Scalar: {
		const std::string s = node.Scalar();
		if (node.Tag() == "!")
			return s;
		if (s == "~" || s == "null" || s == "Null" || s == "NULL")
			return nullptr;
		if (s == "true" || s == "True" || s == "TRUE")
			return true;
		if (s == "false" || s == "False" || s == "FALSE")
			return false;
		try {
			std::size_t used = 0;
			const long long i = std::stoll(s, &used);
			if (used == s.size())
				return i;
			const double d = std::stod(s, &used);
			if (used == s.size())
				return d;
		} catch (const std::exception&) {
		}
		return s;
	}
	default:
		return nullptr;
	}
}

} // namespace

std::string serialize(const OasDocument& document, OutputFormat format) {
	const Json j = document.to_json();
	if (format == OutputFormat::yaml) {
		YAML::Emitter out;
		out.SetIndent(2);
		emit_yaml(out, j);
		return std::string(out.c_str()) + "\n";
	}
	return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

Json parse_document_text(std::string_view text) {
	const std::string_view body = text::trim(text);
	if (!body.empty() && (body.front() == '{' || body.front() == '['))
		return Json::parse(body);
	try {
		return yaml_to_json(YAML::Load(std::string(body)));
	} catch (const YAML::Exception& e) {
		throw SchemaViolation(std::string("document is neither JSON nor YAML: ") + e.what());
	}
}

} // namespace lrasgen
