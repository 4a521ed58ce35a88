// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/llm/orchestrator.hpp"

#include "lrasgen/error.hpp"
#include "lrasgen/llm/json_extract.hpp"
#include "lrasgen/llm/prompts.hpp"
#include "lrasgen/text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <set>
#include <thread>

namespace lrasgen {

namespace {

std::string normalize_path_template(std::string_view raw) {
	std::string path(text::trim(raw));
	if (path.empty() || path.front() != '/')
		path.insert(path.begin(), '/');
	return path;
}

const Json* field(const Json& obj, const char* name) {
	auto it = obj.find(name);
	if (it == obj.end() || it->is_null())
		return nullptr;
	return &*it;
}

std::string string_field(const Json& obj, const char* name, const std::string& where, bool required) {
	const Json* v = field(obj, name);
	if (!v) {
		if (required)
			throw SchemaViolation(where + ": missing string field '" + name + "'");
		return {};
	}
	if (!v->is_string())
		throw SchemaViolation(where + ": field '" + name + "' must be a string");
	return v->get<std::string>();
}

bool is_absent_marker(const Json& v) {
	if (v.is_null())
		return true;
	if (!v.is_string())
		return false;
	const std::string s = text::to_lower(text::trim(v.get<std::string>()));
	return s.empty() || s == "none" || s == "null" || s == "n/a" || s == "na" || s == "undefined";
}

std::optional<double> as_number(const Json& v) {
	if (v.is_number())
		return v.get<double>();
	if (v.is_string()) {
		const std::string s(text::trim(v.get<std::string>()));
		try {
			std::size_t used = 0;
			const double d = std::stod(s, &used);
			if (used == s.size() && std::isfinite(d))
				return d;
		} catch (const std::exception&) {
		}
	}
	return std::nullopt;
}

std::optional<bool> as_bool(const Json& v) {
	if (v.is_boolean())
		return v.get<bool>();
	if (v.is_string()) {
		const std::string s = text::to_lower(text::trim(v.get<std::string>()));
		if (s == "true" || s == "yes" || s == "required")
			return true;
		if (s == "false" || s == "no" || s == "optional")
			return false;
	}
	return std::nullopt;
}

// The first array element matching `pred`, else the first element; objects pass through.
const Json* pick_entry(const Json& reply, const std::function<bool(const Json&)>& pred) {
	if (reply.is_object())
		return &reply;
	if (!reply.is_array())
		throw SchemaViolation("reply must be a JSON array or object");
	if (reply.empty())
		return nullptr;
	for (const auto& item : reply)
		if (item.is_object() && pred(item))
			return &item;
	return &reply.front();
}

// Converts a scalar to the parameter's JSON type, or nullopt if impossible.
std::optional<Json> coerce(const Json& v, ParamType type) {
	switch (type) {
	case ParamType::string:
		if (v.is_string())
			return std::optional<Json>(std::in_place, v);
		if (v.is_number() || v.is_boolean())
			return Json(v.dump());
		return std::nullopt;
	case ParamType::integer: {
		auto d = as_number(v);
		if (!d || std::floor(*d) != *d || std::fabs(*d) > 9.0e15)
			return std::nullopt;
		return Json(static_cast<std::int64_t>(*d));
	}
	case ParamType::number: {
		auto d = as_number(v);
		if (!d)
			return std::nullopt;
		if (std::floor(*d) == *d && std::fabs(*d) <= 9.0e15)
			return Json(static_cast<std::int64_t>(*d));
		return Json(*d);
	}
	case ParamType::boolean: {
		auto b = as_bool(v);
		if (!b)
			return std::nullopt;
		return Json(*b);
	}
	case ParamType::object:
		if (v.is_object())
			return std::optional<Json>(std::in_place, v);
		return std::nullopt;
	case ParamType::array:
		if (v.is_array())
			return std::optional<Json>(std::in_place, v);
		return std::nullopt;
	}
	return std::nullopt;
}

} // namespace

std::vector<EndpointMethod> parse_endpoints(const Json& reply) {
	const Json* list = &reply;
	Json wrapped;
	if (reply.is_object()) {
		if (auto it = reply.find("endpoints"); it != reply.end() && it->is_array()) {
			list = &*it;
		} else {
			wrapped = Json::array({reply});
			list = &wrapped;
		}
	}
	if (!list->is_array())
		throw SchemaViolation("endpoint reply must be a JSON array");

	std::vector<EndpointMethod> out;
	std::set<std::pair<std::string, std::string>> seen;
	for (std::size_t i = 0; i < list->size(); ++i) {
		const Json& item = (*list)[i];
		const std::string where = "endpoint #" + std::to_string(i);
		if (!item.is_object())
			throw SchemaViolation(where + ": must be an object");
		EndpointMethod ep;
		ep.endpoint_path = normalize_path_template(string_field(item, "endpoint_path", where, true));
		ep.http_method = text::to_upper(text::trim(string_field(item, "http_method", where, true)));
		ep.method_name = std::string(text::trim(string_field(item, "method_name", where, true)));
		if (!is_http_method(ep.http_method))
			throw SchemaViolation(where + ": http_method '" + ep.http_method + "' is not one of GET, POST, PUT, DELETE, PATCH, HEAD, OPTIONS");
		if (ep.method_name.empty())
			throw SchemaViolation(where + ": method_name must be non-empty");
		if (seen.emplace(ep.endpoint_path, ep.http_method).second)
			out.push_back(std::move(ep));
	}
	return out;
}

ParamsAndResponses parse_params_responses(const Json& reply, const EndpointMethod& endpoint) {
	ParamsAndResponses out;
	const Json* entry = pick_entry(reply, [&](const Json& item) {
		const Json* p = field(item, "endpoint_path");
		const Json* m = field(item, "endpoint_method");
		if (!m)
			m = field(item, "http_method");
		return p && p->is_string() && normalize_path_template(p->get<std::string>()) == endpoint.endpoint_path && m &&
			   m->is_string() && text::to_upper(text::trim(m->get<std::string>())) == endpoint.http_method;
	});
	if (!entry)
		return out;
	if (!entry->is_object())
		throw SchemaViolation("endpoint entry must be an object");
	out.description = string_field(*entry, "description", "endpoint", false);

	if (const Json* params = field(*entry, "parameters")) {
		if (!params->is_array())
			throw SchemaViolation("'parameters' must be an array");
		std::set<std::pair<std::string, ParamPosition>> seen;
		for (std::size_t i = 0; i < params->size(); ++i) {
			const Json& p = (*params)[i];
			const std::string where = "parameter #" + std::to_string(i);
			if (!p.is_object())
				throw SchemaViolation(where + ": must be an object");
			ParameterSpec spec;
			spec.name = std::string(text::trim(string_field(p, "name", where, true)));
			if (spec.name.empty())
				throw SchemaViolation(where + ": name must be non-empty");
			const std::string type = string_field(p, "type", where, true);
			auto parsed_type = parse_param_type(type);
			if (!parsed_type)
				throw SchemaViolation(where + " '" + spec.name + "': type '" + type +
									  "' is not one of string, number, integer, object, array, boolean");
			spec.type = *parsed_type;
			if (const Json* req = field(p, "require") ? field(p, "require") : field(p, "required")) {
				auto b = as_bool(*req);
				if (!b)
					throw SchemaViolation(where + " '" + spec.name + "': require must be true or false");
				spec.required = *b;
			}
			const std::string position = string_field(p, "position", where, false);
			if (!position.empty()) {
				auto parsed_position = parse_param_position(position);
				if (!parsed_position)
					throw SchemaViolation(where + " '" + spec.name + "': position '" + position +
										  "' is not one of query, path, header, cookie, body");
				spec.position = *parsed_position;
			}
			if (spec.position == ParamPosition::path)
				spec.required = true;
			spec.description = string_field(p, "description", where, false);
			if (seen.emplace(spec.name, spec.position).second)
				out.parameters.push_back(std::move(spec));
		}
	}

	if (const Json* response = field(*entry, "response") ? field(*entry, "response") : field(*entry, "responses")) {
		Json list = response->is_array() ? *response : Json::array({*response});
		for (std::size_t i = 0; i < list.size(); ++i) {
			const Json& r = list[i];
			const std::string where = "response #" + std::to_string(i);
			if (!r.is_object())
				throw SchemaViolation(where + ": must be an object");
			ResponseSpec spec;
			const Json* code = field(r, "status_code");
			auto number = code ? as_number(*code) : std::nullopt;
			if (!number || std::floor(*number) != *number || *number < 100 || *number > 599)
				throw SchemaViolation(where + ": status_code must be an integer HTTP status in 100..599");
			spec.status_code = static_cast<int>(*number);
			if (const Json* schema = field(r, "return_schema"); schema && !is_absent_marker(*schema))
				spec.return_schema = *schema;
			if (auto t = std::string(text::trim(string_field(r, "return_type", where, false))); !t.empty())
				spec.return_type = t;
			if (const Json* ex = field(r, "exception"); ex && !is_absent_marker(*ex)) {
				if (!ex->is_string())
					throw SchemaViolation(where + ": exception must be a string");
				spec.exception = ex->get<std::string>();
			}
			spec.description = string_field(r, "description", where, false);
			out.responses.push_back(std::move(spec));
		}
	}
	return out;
}

ConstraintSet parse_constraints(const Json& reply, const ParameterSpec& param, bool drop_contradictions,
								std::vector<std::string>* diagnostics) {
	ConstraintSet c;
	const Json* entry = pick_entry(reply, [&](const Json& item) {
		const Json* n = field(item, "name");
		return n && n->is_string() && text::trim(n->get<std::string>()) == param.name;
	});
	if (!entry)
		return c;
	if (!entry->is_object())
		throw SchemaViolation("constraint entry must be an object");
	const std::string where = "parameter '" + param.name + "'";
	const auto note = [&](const std::string& message) {
		if (diagnostics)
			diagnostics->push_back(where + ": " + message);
	};

	const auto length = [&](const char* name) -> std::optional<std::uint64_t> {
		const Json* v = field(*entry, name);
		if (!v || is_absent_marker(*v))
			return std::nullopt;
		auto d = as_number(*v);
		if (!d || *d < 0 || std::floor(*d) != *d)
			throw SchemaViolation(where + ": " + name + " must be a nonnegative integer");
		return static_cast<std::uint64_t>(*d);
	};
	const auto bound = [&](const char* name) -> std::optional<double> {
		const Json* v = field(*entry, name);
		if (!v || is_absent_marker(*v))
			return std::nullopt;
		auto d = as_number(*v);
		if (!d)
			throw SchemaViolation(where + ": " + name + " must be a number");
		return d;
	};

	if (param.type == ParamType::string) {
		c.min_length = length("min_length");
		c.max_length = length("max_length");
	}
	if (param.type == ParamType::integer || param.type == ParamType::number) {
		c.minimum = bound("min");
		c.maximum = bound("max");
	}

	if (const Json* e = field(*entry, "enum"); e && !is_absent_marker(*e)) {
		Json values = *e;
		if (values.is_string()) {
			Json split = Json::array();
			const std::string s = values.get<std::string>();
			std::size_t start = 0;
			while (start <= s.size()) {
				auto end = s.find(',', start);
				if (end == std::string::npos)
					end = s.size();
				auto item = text::trim(std::string_view(s).substr(start, end - start));
				if (!item.empty())
					split.push_back(std::string(item));
				start = end + 1;
			}
			values = std::move(split);
		}
		if (!values.is_array())
			throw SchemaViolation(where + ": enum must be an array");
		std::vector<Json> members;
		const ParamType member_type = param.type == ParamType::array ? ParamType::string : param.type;
		for (const auto& v : values) {
			auto coerced = coerce(v, member_type);
			if (!coerced)
				throw SchemaViolation(where + ": enum member " + v.dump() + " does not fit type " +
									  std::string(to_string(param.type)));
			if (std::find(members.begin(), members.end(), *coerced) == members.end())
				members.push_back(std::move(*coerced));
		}
		if (!members.empty())
			c.enumeration = std::move(members);
	}

	if (const Json* f = field(*entry, "format"); f && !is_absent_marker(*f)) {
		if (!f->is_string())
			throw SchemaViolation(where + ": format must be a string");
		c.format = std::string(text::trim(f->get<std::string>()));
	}

	if (const Json* d = field(*entry, "default_value"); d && !is_absent_marker(*d)) {
		auto coerced = coerce(*d, param.type);
		if (!coerced) {
			if (!drop_contradictions)
				throw SchemaViolation(where + ": default_value " + d->dump() + " does not fit type " +
									  std::string(to_string(param.type)));
			note("default_value " + d->dump() + " dropped, does not fit type " + std::string(to_string(param.type)));
		} else {
			c.default_value = std::move(*coerced);
		}
	}

	if (c.min_length && c.max_length && *c.min_length > *c.max_length) {
		const std::string msg = "min_length " + std::to_string(*c.min_length) + " exceeds max_length " +
								std::to_string(*c.max_length);
		if (!drop_contradictions)
			throw ConstraintContradiction(where + ": " + msg);
		note(msg + "; both dropped");
		c.min_length.reset();
		c.max_length.reset();
	}
	if (c.minimum && c.maximum && *c.minimum > *c.maximum) {
		const std::string msg = "min " + Json(*c.minimum).dump() + " exceeds max " + Json(*c.maximum).dump();
		if (!drop_contradictions)
			throw ConstraintContradiction(where + ": " + msg);
		note(msg + "; both dropped");
		c.minimum.reset();
		c.maximum.reset();
	}
	return c;
}

namespace {

template <typename Parse>
auto ask(ChatProvider& provider, const ProviderConfig& config, std::string prompt, Parse&& parse) {
	std::vector<ChatMessage> messages{{"user", std::move(prompt)}};
	for (int attempt = 0;; ++attempt) {
		const bool last = attempt >= config.max_retries;
		std::string raw = provider.send_chat(config, messages);
		try {
			return parse(extract_json(raw), last);
		} catch (const Error& e) {
			const bool recoverable = dynamic_cast<const SchemaViolation*>(&e) || dynamic_cast<const NoJsonFound*>(&e) ||
									 dynamic_cast<const ConstraintContradiction*>(&e);
			if (!recoverable || last)
				throw;
			messages.push_back({"assistant", std::move(raw)});
			messages.push_back({"user", prompts::corrective(e.what())});
		}
	}
}

} // namespace

std::vector<EndpointMethod> stage_a_endpoints(const EndpointContext& context, ChatProvider& provider,
											  const ProviderConfig& config) {
	return ask(provider, config, prompts::endpoints(context.entry_with_configuration()),
			   [](const Json& reply, bool) { return parse_endpoints(reply); });
}

ParamsAndResponses stage_b_params_responses(const EndpointContext& context, const EndpointMethod& endpoint,
											ChatProvider& provider, const ProviderConfig& config) {
	return ask(provider, config, prompts::params_responses(context.bundle_text(), endpoint.method_name),
			   [&](const Json& reply, bool) { return parse_params_responses(reply, endpoint); });
}

ConstraintSet stage_c_constraints(const EndpointContext& context, const EndpointMethod& endpoint,
								  const ParameterSpec& param, ChatProvider& provider, const ProviderConfig& config,
								  std::vector<std::string>* diagnostics) {
	return ask(provider, config, prompts::constraints(context.bundle_text(), param.name, endpoint.method_name),
			   [&](const Json& reply, bool last) { return parse_constraints(reply, param, last, diagnostics); });
}

namespace {

bool is_fatal(const std::exception& e) {
	if (dynamic_cast<const FixtureMiss*>(&e))
		return true;
	if (const auto* pe = dynamic_cast<const ProviderError*>(&e))
		return pe->status() == 0 || pe->status() == 401 || pe->status() == 403;
	return dynamic_cast<const Error*>(&e) == nullptr;
}

// Runs task(i) for i in [0, n) on up to `workers` threads. The fatal error
// with the lowest index, if any, is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& task) {
	if (n == 0)
		return;
	workers = std::clamp<std::size_t>(workers, 1, n);
	std::atomic<std::size_t> next{0};
	std::atomic<bool> stop{false};
	std::vector<std::exception_ptr> errors(n);
	const auto work = [&] {
		while (!stop.load()) {
			const std::size_t i = next.fetch_add(1);
			if (i >= n)
				return;
			try {
				task(i);
			} catch (...) {
				errors[i] = std::current_exception();
				stop = true;
			}
		}
	};
	if (workers == 1) {
		work();
	} else {
		std::vector<std::jthread> pool;
		for (std::size_t w = 0; w < workers; ++w)
			pool.emplace_back(work);
	}
	for (auto& e : errors)
		if (e)
			std::rethrow_exception(e);
}

// Runs `body`; non-fatal library errors become a diagnostic and false.
template <typename Body>
bool guarded(std::vector<std::string>& diagnostics, const std::string& what, Body&& body) {
	try {
		body();
		return true;
	} catch (const std::exception& e) {
		if (is_fatal(e))
			throw;
		diagnostics.push_back(what + ": " + e.what());
		return false;
	}
}

} // namespace

PipelineResult run_pipeline(const std::vector<EndpointContext>& contexts, ChatProvider& provider,
							const ProviderConfig& config) {
	PipelineResult result;
	const std::size_t workers = config.max_in_flight;

	// stage A
	std::vector<std::vector<EndpointMethod>> found(contexts.size());
	std::vector<std::vector<std::string>> a_diag(contexts.size());
	parallel_for(contexts.size(), workers, [&](std::size_t i) {
		const auto& ctx = contexts[i];
		guarded(a_diag[i], "endpoint identification failed for " + text::relative_display(ctx.entry_file, ctx.project_root),
				[&] { found[i] = stage_a_endpoints(ctx, provider, config); });
	});

	struct Pending {
		std::size_t context;
		EndpointMethod method;
	};
	std::vector<Pending> pending;
	std::set<std::pair<std::string, std::string>> seen;
	for (std::size_t i = 0; i < contexts.size(); ++i) {
		for (auto& d : a_diag[i])
			result.diagnostics.push_back(std::move(d));
		for (auto& ep : found[i]) {
			if (!seen.emplace(ep.endpoint_path, ep.http_method).second) {
				result.diagnostics.push_back("duplicate endpoint " + ep.http_method + " " + ep.endpoint_path + " in " +
											 text::relative_display(contexts[i].entry_file, contexts[i].project_root) +
											 " ignored");
				continue;
			}
			pending.push_back({i, std::move(ep)});
		}
	}

	// stage B
	std::vector<std::optional<ParamsAndResponses>> details(pending.size());
	std::vector<std::vector<std::string>> b_diag(pending.size());
	parallel_for(pending.size(), workers, [&](std::size_t i) {
		const auto& p = pending[i];
		guarded(b_diag[i],
				"parameter/response identification failed for " + p.method.http_method + " " + p.method.endpoint_path +
					"; endpoint omitted",
				[&] { details[i] = stage_b_params_responses(contexts[p.context], p.method, provider, config); });
	});

	// stage C
	struct ParamRef {
		std::size_t endpoint;
		std::size_t param;
	};
	std::vector<ParamRef> refs;
	for (std::size_t i = 0; i < pending.size(); ++i)
		if (details[i])
			for (std::size_t k = 0; k < details[i]->parameters.size(); ++k)
				refs.push_back({i, k});
	std::vector<std::vector<std::string>> c_diag(refs.size());
	parallel_for(refs.size(), workers, [&](std::size_t i) {
		const auto& r = refs[i];
		const auto& p = pending[r.endpoint];
		auto& param = details[r.endpoint]->parameters[r.param];
		guarded(c_diag[i],
				"constraint identification failed for parameter '" + param.name + "' of " + p.method.http_method + " " +
					p.method.endpoint_path,
				[&] {
					param.constraints = stage_c_constraints(contexts[p.context], p.method, param, provider, config, &c_diag[i]);
				});
	});

	std::size_t next_c = 0;
	for (std::size_t i = 0; i < pending.size(); ++i) {
		for (auto& d : b_diag[i])
			result.diagnostics.push_back(std::move(d));
		if (!details[i])
			continue;
		for (std::size_t k = 0; k < details[i]->parameters.size(); ++k, ++next_c)
			for (auto& d : c_diag[next_c])
				result.diagnostics.push_back(std::move(d));
		EndpointRecord record;
		record.method = std::move(pending[i].method);
		record.summary = std::move(details[i]->description);
		record.parameters = std::move(details[i]->parameters);
		record.responses = std::move(details[i]->responses);
		result.endpoints.push_back(std::move(record));
	}
	return result;
}

} // namespace lrasgen
