// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/schema_validator.hpp"

#include "lrasgen/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>

namespace lrasgen {

extern const std::string_view oas_meta_schema_text;

namespace {

std::string escape_token(std::string_view token) {
	std::string out;
	for (char c : token) {
		if (c == '~')
			out += "~0";
		else if (c == '/')
			out += "~1";
		else
			out += c;
	}
	return out;
}

std::string child(const std::string& pointer, std::string_view token) {
	return pointer + "/" + escape_token(token);
}

std::string child(const std::string& pointer, std::size_t index) {
	return pointer + "/" + std::to_string(index);
}

bool has_type(const Json& instance, std::string_view type) {
	if (type == "object")
		return instance.is_object();
	if (type == "array")
		return instance.is_array();
	if (type == "string")
		return instance.is_string();
	if (type == "boolean")
		return instance.is_boolean();
	if (type == "null")
		return instance.is_null();
	if (type == "number")
		return instance.is_number();
	if (type == "integer") {
		if (instance.is_number_integer())
			return true;
		if (instance.is_number_float()) {
			const double d = instance.get<double>();
			return std::isfinite(d) && std::floor(d) == d;
		}
	}
	return false;
}

// Equality for enum/const: numbers compare by value, objects ignore key order.
bool json_equal(const Json& a, const Json& b) {
	if (a.is_number() && b.is_number())
		return a.get<double>() == b.get<double>();
	if (a.type() != b.type())
		return false;
	if (a.is_object()) {
		if (a.size() != b.size())
			return false;
		for (auto it = a.begin(); it != a.end(); ++it) {
			auto jt = b.find(it.key());
			if (jt == b.end() || !json_equal(*it, *jt))
				return false;
		}
		return true;
	}
	if (a.is_array()) {
		if (a.size() != b.size())
			return false;
		for (std::size_t i = 0; i < a.size(); ++i)
			if (!json_equal(a[i], b[i]))
				return false;
		return true;
	}
	return a == b;
}

std::string unescape_token(std::string_view token) {
	std::string out;
	for (std::size_t i = 0; i < token.size(); ++i) {
		if (token[i] == '~' && i + 1 < token.size()) {
			out += token[i + 1] == '1' ? '/' : '~';
			++i;
		} else {
			out += token[i];
		}
	}
	return out;
}

void collect_anchors(const Json& node, const std::string& pointer, std::map<std::string, std::string>& out) {
	if (node.is_object()) {
		if (auto it = node.find("$dynamicAnchor"); it != node.end() && it->is_string())
			out.emplace(it->get<std::string>(), pointer);
		for (auto it = node.begin(); it != node.end(); ++it)
			collect_anchors(*it, child(pointer, it.key()), out);
	} else if (node.is_array()) {
		for (std::size_t i = 0; i < node.size(); ++i)
			collect_anchors(node[i], child(pointer, i), out);
	}
}

std::string short_dump(const Json& value) {
	std::string s = value.dump();
	return s.size() > 60 ? s.substr(0, 57) + "..." : s;
}

} // namespace

struct SchemaValidator::Outcome {
	bool ok = true;
	std::set<std::string> evaluated;
	std::vector<SchemaIssue> issues;

	void fail(const std::string& instance_path, const std::string& schema_path, std::string message) {
		ok = false;
		issues.push_back({instance_path, schema_path, std::move(message)});
	}
	// For checks of a child instance: its evaluated keys belong to the child.
	void absorb_child(Outcome&& sub) {
		if (!sub.ok) {
			ok = false;
			std::move(sub.issues.begin(), sub.issues.end(), std::back_inserter(issues));
		}
	}
	void absorb(Outcome&& sub) {
		if (sub.ok) {
			evaluated.insert(sub.evaluated.begin(), sub.evaluated.end());
		} else {
			ok = false;
			std::move(sub.issues.begin(), sub.issues.end(), std::back_inserter(issues));
		}
	}
};

SchemaValidator::SchemaValidator(Json schema) : root_(std::move(schema)) {
	collect_anchors(root_, "", dynamic_anchors_);
}

const Json& SchemaValidator::resolve_pointer(const std::string& ref, std::string& schema_path) const {
	if (ref.empty() || ref.front() != '#')
		throw Error(ErrorCategory::schema, "unsupported non-local $ref: " + ref);
	if (ref.size() > 1 && ref[1] != '/') {
		auto it = dynamic_anchors_.find(ref.substr(1));
		if (it == dynamic_anchors_.end())
			throw Error(ErrorCategory::schema, "unknown anchor: " + ref);
		return resolve_pointer("#" + it->second, schema_path);
	}
	const Json* node = &root_;
	std::string_view rest = std::string_view(ref).substr(1);
	while (!rest.empty()) {
		rest.remove_prefix(1);
		const auto slash = rest.find('/');
		const std::string token = unescape_token(rest.substr(0, slash));
		rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
		if (node->is_object() && node->contains(token))
			node = &(*node)[token];
		else if (node->is_array() && !token.empty() && std::all_of(token.begin(), token.end(), ::isdigit) &&
				 std::stoul(token) < node->size())
			node = &(*node)[std::stoul(token)];
		else
			throw Error(ErrorCategory::schema, "unresolvable $ref: " + ref);
	}
	schema_path = ref.substr(1);
	return *node;
}

bool SchemaValidator::matches(const std::string& pattern, const std::string& text) const {
	std::lock_guard lock(regex_mutex_);
	auto it = regex_cache_.find(pattern);
	if (it == regex_cache_.end())
		it = regex_cache_.emplace(pattern, compile_regex(pattern)).first;
	return regex_search(text, it->second);
}

SchemaValidator::Outcome SchemaValidator::check(const Json& schema, const std::string& sp, const Json& inst,
												const std::string& ip) const {
	Outcome out;
	if (schema.is_boolean()) {
		if (!schema.get<bool>())
			out.fail(ip, sp, "value is not allowed here");
		return out;
	}
	if (!schema.is_object())
		return out;

	if (auto it = schema.find("$ref"); it != schema.end()) {
		std::string target_path;
		const Json& target = resolve_pointer(it->get<std::string>(), target_path);
		out.absorb(check(target, target_path, inst, ip));
	}
	if (auto it = schema.find("$dynamicRef"); it != schema.end()) {
		std::string target_path;
		const Json& target = resolve_pointer(it->get<std::string>(), target_path);
		out.absorb(check(target, target_path, inst, ip));
	}

	if (auto it = schema.find("type"); it != schema.end()) {
		bool any = false;
		if (it->is_string())
			any = has_type(inst, it->get<std::string>());
		else
			for (const auto& t : *it)
				any = any || has_type(inst, t.get<std::string>());
		if (!any)
			out.fail(ip, child(sp, "type"), "expected type " + it->dump() + ", got " + inst.type_name());
	}
	if (auto it = schema.find("enum"); it != schema.end()) {
		if (std::none_of(it->begin(), it->end(), [&](const Json& v) { return json_equal(v, inst); }))
			out.fail(ip, child(sp, "enum"), short_dump(inst) + " is not one of " + short_dump(*it));
	}
	if (auto it = schema.find("const"); it != schema.end()) {
		if (!json_equal(*it, inst))
			out.fail(ip, child(sp, "const"), "expected " + short_dump(*it));
	}

	if (inst.is_number()) {
		const double x = inst.get<double>();
		if (auto it = schema.find("minimum"); it != schema.end() && x < it->get<double>())
			out.fail(ip, child(sp, "minimum"), short_dump(inst) + " is less than " + it->dump());
		if (auto it = schema.find("maximum"); it != schema.end() && x > it->get<double>())
			out.fail(ip, child(sp, "maximum"), short_dump(inst) + " is greater than " + it->dump());
		if (auto it = schema.find("exclusiveMinimum"); it != schema.end() && x <= it->get<double>())
			out.fail(ip, child(sp, "exclusiveMinimum"), short_dump(inst) + " is not greater than " + it->dump());
		if (auto it = schema.find("exclusiveMaximum"); it != schema.end() && x >= it->get<double>())
			out.fail(ip, child(sp, "exclusiveMaximum"), short_dump(inst) + " is not less than " + it->dump());
		if (auto it = schema.find("multipleOf"); it != schema.end()) {
			const double q = x / it->get<double>();
			if (!std::isfinite(q) || std::fabs(q - std::round(q)) > 1e-9)
				out.fail(ip, child(sp, "multipleOf"), short_dump(inst) + " is not a multiple of " + it->dump());
		}
	}

	if (inst.is_string()) {
		const auto& str = inst.get_ref<const std::string&>();
		const auto length = static_cast<std::size_t>(
			std::count_if(str.begin(), str.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
		if (auto it = schema.find("minLength"); it != schema.end() && length < it->get<std::size_t>())
			out.fail(ip, child(sp, "minLength"), "string is shorter than " + it->dump() + " characters");
		if (auto it = schema.find("maxLength"); it != schema.end() && length > it->get<std::size_t>())
			out.fail(ip, child(sp, "maxLength"), "string is longer than " + it->dump() + " characters");
		if (auto it = schema.find("pattern"); it != schema.end())
			if (!matches(it->get<std::string>(), inst.get<std::string>()))
				out.fail(ip, child(sp, "pattern"),
						 short_dump(inst) + " does not match pattern " + it->get<std::string>());
	}

	if (inst.is_array()) {
		if (auto it = schema.find("minItems"); it != schema.end() && inst.size() < it->get<std::size_t>())
			out.fail(ip, child(sp, "minItems"), "array has fewer than " + it->dump() + " items");
		if (auto it = schema.find("maxItems"); it != schema.end() && inst.size() > it->get<std::size_t>())
			out.fail(ip, child(sp, "maxItems"), "array has more than " + it->dump() + " items");
		if (auto it = schema.find("uniqueItems"); it != schema.end() && it->is_boolean() && it->get<bool>())
			for (std::size_t i = 0; i < inst.size(); ++i)
				for (std::size_t j = i + 1; j < inst.size(); ++j)
					if (json_equal(inst[i], inst[j]))
						out.fail(ip, child(sp, "uniqueItems"), "items " + std::to_string(i) + " and " + std::to_string(j) + " are equal");
		std::size_t prefix = 0;
		if (auto it = schema.find("prefixItems"); it != schema.end())
			for (; prefix < it->size() && prefix < inst.size(); ++prefix)
				out.absorb_child(check((*it)[prefix], child(child(sp, "prefixItems"), prefix), inst[prefix], child(ip, prefix)));
		if (auto it = schema.find("items"); it != schema.end())
			for (std::size_t i = prefix; i < inst.size(); ++i)
				out.absorb_child(check(*it, child(sp, "items"), inst[i], child(ip, i)));
		if (auto it = schema.find("contains"); it != schema.end()) {
			std::size_t hits = 0;
			for (std::size_t i = 0; i < inst.size(); ++i)
				hits += check(*it, child(sp, "contains"), inst[i], child(ip, i)).ok ? 1 : 0;
			const std::size_t lo = schema.value("minContains", std::size_t{1});
			if (hits < lo)
				out.fail(ip, child(sp, "contains"), "fewer than " + std::to_string(lo) + " items match 'contains'");
			if (auto mx = schema.find("maxContains"); mx != schema.end() && hits > mx->get<std::size_t>())
				out.fail(ip, child(sp, "maxContains"), "more than " + mx->dump() + " items match 'contains'");
		}
	}

	if (inst.is_object()) {
		if (auto it = schema.find("required"); it != schema.end())
			for (const auto& name : *it)
				if (!inst.contains(name.get<std::string>()))
					out.fail(ip, child(sp, "required"), "missing required property '" + name.get<std::string>() + "'");
		if (auto it = schema.find("minProperties"); it != schema.end() && inst.size() < it->get<std::size_t>())
			out.fail(ip, child(sp, "minProperties"), "object has fewer than " + it->dump() + " properties");
		if (auto it = schema.find("maxProperties"); it != schema.end() && inst.size() > it->get<std::size_t>())
			out.fail(ip, child(sp, "maxProperties"), "object has more than " + it->dump() + " properties");
		if (auto it = schema.find("dependentRequired"); it != schema.end())
			for (auto d = it->begin(); d != it->end(); ++d)
				if (inst.contains(d.key()))
					for (const auto& name : *d)
						if (!inst.contains(name.get<std::string>()))
							out.fail(ip, child(sp, "dependentRequired"),
									 "'" + d.key() + "' requires property '" + name.get<std::string>() + "'");
		if (auto it = schema.find("propertyNames"); it != schema.end())
			for (auto p = inst.begin(); p != inst.end(); ++p) {
				Outcome name = check(*it, child(sp, "propertyNames"), Json(p.key()), child(ip, p.key()));
				if (!name.ok)
					out.fail(child(ip, p.key()), child(sp, "propertyNames"), "property name '" + p.key() + "' is not allowed");
			}

		std::set<std::string> local;
		const auto props = schema.find("properties");
		const auto patterns = schema.find("patternProperties");
		for (auto p = inst.begin(); p != inst.end(); ++p) {
			bool covered = false;
			if (props != schema.end() && props->contains(p.key())) {
				covered = true;
				out.absorb_child(check((*props)[p.key()], child(child(sp, "properties"), p.key()), *p, child(ip, p.key())));
			}
			if (patterns != schema.end())
				for (auto pat = patterns->begin(); pat != patterns->end(); ++pat)
					if (matches(pat.key(), p.key())) {
						covered = true;
						out.absorb_child(check(*pat, child(child(sp, "patternProperties"), pat.key()), *p, child(ip, p.key())));
					}
			if (covered) {
				local.insert(p.key());
			} else if (auto add = schema.find("additionalProperties"); add != schema.end()) {
				Outcome sub = check(*add, child(sp, "additionalProperties"), *p, child(ip, p.key()));
				if (!sub.ok && add->is_boolean())
					out.fail(child(ip, p.key()), child(sp, "additionalProperties"), "unexpected property '" + p.key() + "'");
				else
					out.absorb_child(std::move(sub));
				local.insert(p.key());
			}
		}
		out.evaluated.insert(local.begin(), local.end());

		if (auto it = schema.find("dependentSchemas"); it != schema.end())
			for (auto d = it->begin(); d != it->end(); ++d)
				if (inst.contains(d.key()))
					out.absorb(check(*d, child(child(sp, "dependentSchemas"), d.key()), inst, ip));
	}

	if (auto it = schema.find("allOf"); it != schema.end())
		for (std::size_t i = 0; i < it->size(); ++i)
			out.absorb(check((*it)[i], child(child(sp, "allOf"), i), inst, ip));

	if (auto it = schema.find("anyOf"); it != schema.end()) {
		bool any = false;
		std::optional<Outcome> closest;
		for (std::size_t i = 0; i < it->size(); ++i) {
			Outcome sub = check((*it)[i], child(child(sp, "anyOf"), i), inst, ip);
			if (sub.ok) {
				any = true;
				out.evaluated.insert(sub.evaluated.begin(), sub.evaluated.end());
			} else if (!closest || sub.issues.size() < closest->issues.size()) {
				closest = std::move(sub);
			}
		}
		if (!any) {
			out.fail(ip, child(sp, "anyOf"), "value matches none of the allowed alternatives");
			if (closest)
				out.absorb(std::move(*closest));
		}
	}

	if (auto it = schema.find("oneOf"); it != schema.end()) {
		std::size_t passing = 0;
		std::optional<Outcome> closest;
		for (std::size_t i = 0; i < it->size(); ++i) {
			Outcome sub = check((*it)[i], child(child(sp, "oneOf"), i), inst, ip);
			if (sub.ok) {
				++passing;
				out.evaluated.insert(sub.evaluated.begin(), sub.evaluated.end());
			} else if (!closest || sub.issues.size() < closest->issues.size()) {
				closest = std::move(sub);
			}
		}
		if (passing == 0) {
			out.fail(ip, child(sp, "oneOf"), "value matches none of the alternatives");
			if (closest)
				out.absorb(std::move(*closest));
		} else if (passing > 1) {
			out.fail(ip, child(sp, "oneOf"), "value matches " + std::to_string(passing) + " alternatives, expected one");
		}
	}

	if (auto it = schema.find("not"); it != schema.end()) {
		if (check(*it, child(sp, "not"), inst, ip).ok)
			out.fail(ip, child(sp, "not"), "value matches a disallowed schema");
	}

	if (auto it = schema.find("if"); it != schema.end()) {
		Outcome cond = check(*it, child(sp, "if"), inst, ip);
		if (cond.ok) {
			out.evaluated.insert(cond.evaluated.begin(), cond.evaluated.end());
			if (auto t = schema.find("then"); t != schema.end())
				out.absorb(check(*t, child(sp, "then"), inst, ip));
		} else if (auto e = schema.find("else"); e != schema.end()) {
			out.absorb(check(*e, child(sp, "else"), inst, ip));
		}
	}

	if (auto it = schema.find("unevaluatedProperties"); it != schema.end() && inst.is_object()) {
		for (auto p = inst.begin(); p != inst.end(); ++p) {
			if (out.evaluated.count(p.key()))
				continue;
			Outcome sub = check(*it, child(sp, "unevaluatedProperties"), *p, child(ip, p.key()));
			if (!sub.ok && it->is_boolean())
				out.fail(child(ip, p.key()), child(sp, "unevaluatedProperties"), "unexpected property '" + p.key() + "'");
			else
				out.absorb_child(std::move(sub));
			out.evaluated.insert(p.key());
		}
	}
	return out;
}

std::vector<SchemaIssue> SchemaValidator::validate(const Json& instance) const {
	return check(root_, "", instance, "").issues;
}

const Json& oas_meta_schema() {
	static const Json schema = Json::parse(oas_meta_schema_text);
	return schema;
}

std::vector<SchemaIssue> validate_oas(const Json& document) {
	static const SchemaValidator validator(oas_meta_schema());
	return validator.validate(document);
}

} // namespace lrasgen
