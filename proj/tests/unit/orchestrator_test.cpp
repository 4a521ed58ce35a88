// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/error.hpp"
#include "lrasgen/llm/json_extract.hpp"
#include "lrasgen/llm/orchestrator.hpp"
#include "lrasgen/llm/prompts.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace lrasgen;
using namespace lrasgen::testing;

namespace {

EndpointContext context(const std::string& code) {
	EndpointContext ctx;
	ctx.project_root = "/proj";
	ctx.entry_file = "/proj/Entry.java";
	ctx.cleaned_entry = code;
	return ctx;
}

ParameterSpec param(const std::string& name, ParamType type) {
	ParameterSpec p;
	p.name = name;
	p.type = type;
	return p;
}

const EndpointMethod stats_ep{"/statistics/projects", "GET", "statisticsProjectGet()"};

const std::vector<std::string> paste_syntax{"NONE", "JAVA", "CSHARP", "Python", "JAVASCRIPT", "GO", "CLANG",
											"CPLUSPLUS", "PHP", "SWIFT", "LUA", "RUBY", "MYSQL", "POSTGRESQL"};

} // namespace

// --- stage A parsing --------------------------------------------------------

TEST(ParseEndpoints, PromptExample) {
	const auto eps = parse_endpoints(prompts::endpoints_example());
	ASSERT_EQ(eps.size(), 1u);
	EXPECT_EQ(eps[0], (EndpointMethod{"/api/getUser", "GET", "getUser()"}));
}

TEST(ParseEndpoints, EmptyReply) {
	EXPECT_TRUE(parse_endpoints(extract_json("[]")).empty());
}

TEST(ParseEndpoints, NormalizesAndDeduplicates) {
	const auto eps = parse_endpoints(Json::parse(R"([
		{"endpoint_path": "statistics/projects", "http_method": "get", "method_name": "a"},
		{"endpoint_path": "/statistics/projects", "http_method": "GET", "method_name": "b"},
		{"endpoint_path": "/statistics/projects", "http_method": "post", "method_name": "c"}])"));
	ASSERT_EQ(eps.size(), 2u);
	EXPECT_EQ(eps[0], (EndpointMethod{"/statistics/projects", "GET", "a"}));
	EXPECT_EQ(eps[1].http_method, "POST");
	for (const auto& e : eps) {
		EXPECT_EQ(e.endpoint_path.front(), '/');
		EXPECT_TRUE(is_http_method(e.http_method));
	}
}

TEST(ParseEndpoints, WrappedForms) {
	EXPECT_EQ(parse_endpoints(Json::parse(R"({"endpoints": [{"endpoint_path": "/a", "http_method": "GET", "method_name": "a"}]})")).size(), 1u);
	EXPECT_EQ(parse_endpoints(Json::parse(R"({"endpoint_path": "/a", "http_method": "GET", "method_name": "a"})")).size(), 1u);
}

TEST(ParseEndpoints, SchemaViolations) {
	EXPECT_THROW(parse_endpoints(Json("text")), SchemaViolation);
	EXPECT_THROW(parse_endpoints(Json::parse(R"([{"endpoint_path": "/a", "http_method": "FETCH", "method_name": "a"}])")), SchemaViolation);
	EXPECT_THROW(parse_endpoints(Json::parse(R"([{"endpoint_path": "/a", "method_name": "a"}])")), SchemaViolation);
	EXPECT_THROW(parse_endpoints(Json::parse(R"([{"endpoint_path": "/a", "http_method": "GET", "method_name": ""}])")), SchemaViolation);
	EXPECT_THROW(parse_endpoints(Json::parse(R"([1])")), SchemaViolation);
}

// --- stage B parsing --------------------------------------------------------

TEST(ParseParamsResponses, PromptExample) {
	const auto r = parse_params_responses(prompts::params_responses_example(), {"/api/getUser", "GET", "getUser()"});
	ASSERT_EQ(r.parameters.size(), 3u);
	EXPECT_EQ(r.parameters[0].name, "str_param");
	EXPECT_EQ(r.parameters[0].type, ParamType::string);
	EXPECT_TRUE(r.parameters[0].required);
	EXPECT_EQ(r.parameters[1].name, "num_param");
	EXPECT_EQ(r.parameters[1].type, ParamType::integer);
	EXPECT_EQ(r.parameters[1].position, ParamPosition::path);
	EXPECT_EQ(r.parameters[2].name, "bool_param");
	EXPECT_EQ(r.parameters[2].type, ParamType::boolean);
	ASSERT_EQ(r.responses.size(), 1u);
	EXPECT_EQ(r.responses[0].status_code, 200);
	EXPECT_EQ(r.responses[0].exception, "NotFoundException");
	ASSERT_TRUE(r.responses[0].return_schema);
	EXPECT_TRUE(r.responses[0].return_schema->is_array());
	EXPECT_EQ(r.description, "An Endpoint to Get User List");
}

TEST(ParseParamsResponses, StartDateIsOptionalQueryString) {
	const auto r = parse_params_responses(Json::parse(R"([{"endpoint_path": "/statistics/projects", "endpoint_method": "GET",
		"parameters": [{"name": "start_date", "type": "string", "require": "false", "position": "query", "description": "d"}],
		"response": {"status_code": 200}}])"), stats_ep);
	ASSERT_EQ(r.parameters.size(), 1u);
	EXPECT_EQ(r.parameters[0], (ParameterSpec{"start_date", ParamType::string, false, ParamPosition::query, "d", {}}));
}

TEST(ParseParamsResponses, ParameterlessEndpoint) {
	const auto r = parse_params_responses(
		Json::parse(R"([{"parameters": [], "response": {"status_code": 204, "description": "gone"}}])"), stats_ep);
	EXPECT_TRUE(r.parameters.empty());
	ASSERT_EQ(r.responses.size(), 1u);
	EXPECT_EQ(r.responses[0].status_code, 204);
}

TEST(ParseParamsResponses, ResponseArrayKeepsRepeatedCodes) {
	const auto r = parse_params_responses(Json::parse(R"([{"parameters": [],
		"response": [{"status_code": 201}, {"status_code": "409", "description": "paste exists"},
					 {"status_code": 409, "description": "bad password"}]}])"), stats_ep);
	ASSERT_EQ(r.responses.size(), 3u);
	EXPECT_EQ(r.responses[1].status_code, 409);
	EXPECT_EQ(r.responses[2].status_code, 409);
	EXPECT_NE(r.responses[1].description, r.responses[2].description);
}

TEST(ParseParamsResponses, RequireBooleanOrStringAndPathForcedRequired) {
	const auto r = parse_params_responses(Json::parse(R"([{"parameters": [
		{"name": "a", "type": "integer", "require": true, "position": "query"},
		{"name": "b", "type": "str", "require": "False", "position": "header"},
		{"name": "id", "type": "integer", "require": "false", "position": "path"},
		{"name": "c", "type": "boolean"}],
		"response": {"status_code": 200}}])"), stats_ep);
	ASSERT_EQ(r.parameters.size(), 4u);
	EXPECT_TRUE(r.parameters[0].required);
	EXPECT_FALSE(r.parameters[1].required);
	EXPECT_EQ(r.parameters[1].type, ParamType::string);
	EXPECT_EQ(r.parameters[1].position, ParamPosition::header);
	EXPECT_TRUE(r.parameters[2].required);
	EXPECT_EQ(r.parameters[3].position, ParamPosition::query);
	for (const auto& p : r.parameters)
		if (p.position == ParamPosition::path)
			EXPECT_TRUE(p.required);
}

TEST(ParseParamsResponses, PicksTheMatchingEntry) {
	const auto r = parse_params_responses(Json::parse(R"([
		{"endpoint_path": "/other", "endpoint_method": "GET", "parameters": [{"name": "x", "type": "string"}], "response": {"status_code": 200}},
		{"endpoint_path": "/statistics/projects", "endpoint_method": "GET", "parameters": [{"name": "y", "type": "string"}], "response": {"status_code": 200}}])"),
		stats_ep);
	ASSERT_EQ(r.parameters.size(), 1u);
	EXPECT_EQ(r.parameters[0].name, "y");
}

TEST(ParseParamsResponses, SchemaViolations) {
	EXPECT_THROW(parse_params_responses(Json::parse(R"([{"parameters": [{"name": "x", "type": "banana"}], "response": {"status_code": 200}}])"), stats_ep), SchemaViolation);
	EXPECT_THROW(parse_params_responses(Json::parse(R"([{"parameters": [{"name": "x", "type": "string", "position": "moon"}], "response": {"status_code": 200}}])"), stats_ep), SchemaViolation);
	EXPECT_THROW(parse_params_responses(Json::parse(R"([{"parameters": [], "response": {"status_code": 700}}])"), stats_ep), SchemaViolation);
	EXPECT_THROW(parse_params_responses(Json::parse(R"([{"parameters": [], "response": {"status_code": "abc"}}])"), stats_ep), SchemaViolation);
	EXPECT_THROW(parse_params_responses(Json::parse(R"([{"parameters": {}, "response": {"status_code": 200}}])"), stats_ep), SchemaViolation);
	EXPECT_THROW(parse_params_responses(Json::parse(R"([{"parameters": [{"name": "x", "type": "string", "require": "maybe"}], "response": {"status_code": 200}}])"), stats_ep), SchemaViolation);
}

// --- stage C parsing --------------------------------------------------------

TEST(ParseConstraints, PromptExampleString) {
	const auto c = parse_constraints(prompts::constraints_example(), param("str_param", ParamType::string));
	EXPECT_EQ(c.min_length, 16u);
	EXPECT_EQ(c.max_length, 128u);
	ASSERT_TRUE(c.enumeration);
	EXPECT_EQ(*c.enumeration, (std::vector<Json>{"enum1", "enum2", "enum3"}));
	EXPECT_EQ(c.default_value, Json("hello world"));
	EXPECT_EQ(c.format, "yyyy-mm-dd hh24:mi:ss");
	EXPECT_FALSE(c.minimum);
	EXPECT_FALSE(c.maximum);
}

TEST(ParseConstraints, PromptExampleNumberAndBoolean) {
	const auto n = parse_constraints(prompts::constraints_example(), param("num_param", ParamType::integer));
	EXPECT_EQ(n.minimum, 2.0);
	EXPECT_EQ(n.maximum, 16.0);
	EXPECT_EQ(n.default_value, Json(0));
	const auto b = parse_constraints(prompts::constraints_example(), param("bool_param", ParamType::boolean));
	EXPECT_EQ(b.default_value, Json(true));
	EXPECT_FALSE(b.min_length || b.max_length || b.minimum || b.maximum || b.enumeration || b.format);
}

TEST(ParseConstraints, PasteSyntaxEnumeration) {
	Json reply = Json::array({{{"name", "paste_syntax"}, {"type", "string"}, {"enum", paste_syntax}}});
	const auto c = parse_constraints(reply, param("paste_syntax", ParamType::string));
	ASSERT_TRUE(c.enumeration);
	ASSERT_EQ(c.enumeration->size(), 14u);
	for (std::size_t i = 0; i < paste_syntax.size(); ++i)
		EXPECT_EQ((*c.enumeration)[i], Json(paste_syntax[i]));
}

TEST(ParseConstraints, BooleanWithOnlyDefault) {
	const auto c = parse_constraints(Json::parse(R"([{"name": "flag", "default_value": "true"}])"), param("flag", ParamType::boolean));
	EXPECT_EQ(c.default_value, Json(true));
	ConstraintSet expected;
	expected.default_value = true;
	EXPECT_EQ(c, expected);
}

TEST(ParseConstraints, AbsentMarkersAndTypeScoping) {
	const auto c = parse_constraints(Json::parse(R"([{"name": "q", "min_length": "None", "max_length": "", "min": 1, "max": 5,
		"enum": null, "format": "N/A", "default_value": "undefined"}])"), param("q", ParamType::string));
	EXPECT_TRUE(c.empty());
	const auto n = parse_constraints(Json::parse(R"([{"name": "n", "min_length": 3, "min": "1.5", "max": 5}])"), param("n", ParamType::number));
	EXPECT_FALSE(n.min_length);
	EXPECT_EQ(n.minimum, 1.5);
	EXPECT_EQ(n.maximum, 5.0);
}

TEST(ParseConstraints, EnumCoercionDedupAndCommaSplit) {
	const auto i = parse_constraints(Json::parse(R"([{"name": "n", "enum": ["1", 2, 2.0, "3"]}])"), param("n", ParamType::integer));
	EXPECT_EQ(*i.enumeration, (std::vector<Json>{1, 2, 3}));
	const auto s = parse_constraints(Json::parse(R"([{"name": "s", "enum": "asc, desc ,asc"}])"), param("s", ParamType::string));
	EXPECT_EQ(*s.enumeration, (std::vector<Json>{"asc", "desc"}));
	EXPECT_THROW(parse_constraints(Json::parse(R"([{"name": "n", "enum": ["x"]}])"), param("n", ParamType::integer)), SchemaViolation);
}

TEST(ParseConstraints, ContradictionsThrowOrDrop) {
	const Json bad = Json::parse(R"([{"name": "limit", "min": 100, "max": 1, "default_value": 10}])");
	EXPECT_THROW(parse_constraints(bad, param("limit", ParamType::integer)), ConstraintContradiction);
	std::vector<std::string> diags;
	const auto c = parse_constraints(bad, param("limit", ParamType::integer), true, &diags);
	EXPECT_FALSE(c.minimum);
	EXPECT_FALSE(c.maximum);
	EXPECT_EQ(c.default_value, Json(10));
	ASSERT_EQ(diags.size(), 1u);
	EXPECT_NE(diags[0].find("limit"), std::string::npos);

	const Json lengths = Json::parse(R"([{"name": "s", "min_length": 9, "max_length": 2}])");
	EXPECT_THROW(parse_constraints(lengths, param("s", ParamType::string)), ConstraintContradiction);
	EXPECT_TRUE(parse_constraints(lengths, param("s", ParamType::string), true).empty());
}

TEST(ParseConstraints, BadDefaultThrowsOrDrops) {
	const Json reply = Json::parse(R"([{"name": "n", "default_value": "ten"}])");
	EXPECT_THROW(parse_constraints(reply, param("n", ParamType::integer)), SchemaViolation);
	std::vector<std::string> diags;
	EXPECT_FALSE(parse_constraints(reply, param("n", ParamType::integer), true, &diags).default_value);
	EXPECT_EQ(diags.size(), 1u);
}

TEST(ParseConstraints, EmptyReplyMeansNoConstraints) {
	EXPECT_TRUE(parse_constraints(Json::array(), param("x", ParamType::string)).empty());
}

// --- stages with a scripted model -------------------------------------------

TEST(StageA, RecordedCatWatchReply) {
	const Json plan = Json::parse(slurp(plan_file("catwatch")));
	ScriptedProvider provider(plan);
	const auto eps = stage_a_endpoints(context("public class StatisticsController {}"), provider, {});
	ASSERT_EQ(eps.size(), 2u);
	EXPECT_EQ(eps[0], (EndpointMethod{"/statistics/projects", "GET", "statisticsProjectGet()"}));
	EXPECT_EQ(provider.calls(), 1u);
}

TEST(StageA, RetryAppendsCorrectiveTurnsAndRespectsMaxRetries) {
	Json plan = {{"stage_a", {{{"match", "X"}, {"replies", {"no idea", "still nothing", "nope", "nah", "never"}}}}}};
	ScriptedProvider provider(plan);
	ProviderConfig cfg;
	cfg.max_retries = 2;
	EXPECT_THROW(stage_a_endpoints(context("X"), provider, cfg), NoJsonFound);
	EXPECT_EQ(provider.calls(), 3u);
	const auto convs = provider.conversations();
	ASSERT_EQ(convs.size(), 3u);
	for (std::size_t i = 0; i < convs.size(); ++i) {
		ASSERT_EQ(convs[i].size(), 1 + 2 * i);
		// earlier turns are carried over untouched
		for (std::size_t k = 0; k + 1 < convs[i].size() && i > 0; ++k)
			if (k < convs[i - 1].size())
				EXPECT_EQ(convs[i][k], convs[i - 1][k]);
	}
	EXPECT_EQ(convs[2][1], (ChatMessage{"assistant", "no idea"}));
	EXPECT_EQ(convs[2][2].role, "user");
	EXPECT_NE(convs[2][2].content.find("could not be used"), std::string::npos);
}

TEST(StageA, RecoversOnSecondAttempt) {
	Json plan = {{"stage_a", {{{"match", "X"}, {"replies", {"[{\"endpoint_path\": \"/a\", \"http_method\": \"FETCH\", \"method_name\": \"a\"}]",
																 Json::array({{{"endpoint_path", "/a"}, {"http_method", "GET"}, {"method_name", "a"}}})}}}}}};
	ScriptedProvider provider(plan);
	const auto eps = stage_a_endpoints(context("X"), provider, {});
	ASSERT_EQ(eps.size(), 1u);
	EXPECT_EQ(provider.calls(), 2u);
	EXPECT_NE(provider.conversations()[1][2].content.find("FETCH"), std::string::npos);
}

TEST(StageA, ZeroRetries) {
	Json plan = {{"stage_a", {{{"match", "X"}, {"reply", "nothing"}}}}};
	ScriptedProvider provider(plan);
	ProviderConfig cfg;
	cfg.max_retries = 0;
	EXPECT_THROW(stage_a_endpoints(context("X"), provider, cfg), NoJsonFound);
	EXPECT_EQ(provider.calls(), 1u);
}

TEST(StageA, ConfigurationFileIsSubmitted) {
	auto ctx = context("def post_list(request): pass");
	ctx.related["/proj/urls.py"] = "urlpatterns = [path('posts/', views.post_list)]";
	ctx.configuration_files.push_back("/proj/urls.py");
	ctx.related["/proj/models.py"] = "class Post: pass";
	ScriptedProvider provider(Json::object());
	stage_a_endpoints(ctx, provider, {});
	const auto prompt = provider.conversations()[0][0].content;
	EXPECT_NE(prompt.find("urlpatterns"), std::string::npos);
	EXPECT_EQ(prompt.find("class Post"), std::string::npos);
}

TEST(StageB, PromptExampleReplyAndFullBundle) {
	auto ctx = context("class A {}");
	ctx.related["/proj/Constants.java"] = "class Constants { String P = \"start_date\"; }";
	Json plan = {{"stage_b", {{{"method", "getUser()"}, {"reply", prompts::params_responses_example()}}}}};
	ScriptedProvider provider(plan);
	const auto r = stage_b_params_responses(ctx, {"/api/getUser", "GET", "getUser()"}, provider, {});
	EXPECT_EQ(r.parameters.size(), 3u);
	ASSERT_EQ(r.responses.size(), 1u);
	EXPECT_EQ(r.responses[0].status_code, 200);
	EXPECT_NE(provider.conversations()[0][0].content.find("class Constants"), std::string::npos);
}

TEST(StageC, ContradictionRetriedThenLenientOnLastAttempt) {
	Json bad = Json::parse(R"([{"name": "limit", "min": 100, "max": 1}])");
	Json plan = {{"stage_c", {{{"method", "top()"}, {"parameter", "limit"}, {"replies", {bad, bad}}}}}};
	ScriptedProvider provider(plan);
	ProviderConfig cfg;
	cfg.max_retries = 1;
	std::vector<std::string> diags;
	const auto c = stage_c_constraints(context("x"), {"/top", "GET", "top()"}, param("limit", ParamType::integer), provider, cfg, &diags);
	EXPECT_EQ(provider.calls(), 2u);
	EXPECT_FALSE(c.minimum);
	EXPECT_FALSE(c.maximum);
	EXPECT_EQ(diags.size(), 1u);
}

TEST(StageC, PromptExampleReply) {
	Json plan = {{"stage_c", {{{"method", "getUser()"}, {"parameter", "str_param"}, {"reply", prompts::constraints_example()}}}}};
	ScriptedProvider provider(plan);
	const auto c = stage_c_constraints(context("x"), {"/api/getUser", "GET", "getUser()"}, param("str_param", ParamType::string), provider, {});
	EXPECT_EQ(c.min_length, 16u);
	EXPECT_EQ(c.max_length, 128u);
}

// --- whole pipeline ---------------------------------------------------------

namespace {

std::vector<EndpointContext> catwatch_like_contexts() {
	return {context("public class ProjectController {}"), context("public class StatisticsController {}")};
}

std::string pipeline_json(const PipelineResult& r) {
	Json j = Json::array();
	for (const auto& e : r.endpoints) {
		Json ps = Json::array();
		for (const auto& p : e.parameters)
			ps.push_back({p.name, to_string(p.type), p.required, to_string(p.position), p.constraints.min_length.value_or(0),
						  p.constraints.minimum.value_or(-1), p.constraints.default_value.value_or(Json())});
		Json rs = Json::array();
		for (const auto& x : e.responses)
			rs.push_back({x.status_code, x.description});
		j.push_back({e.method.endpoint_path, e.method.http_method, ps, rs});
	}
	return j.dump() + Json(r.diagnostics).dump();
}

} // namespace

TEST(RunPipeline, OrderIsIndependentOfConcurrency) {
	const Json plan = Json::parse(slurp(plan_file("catwatch")));
	ProviderConfig serial, wide;
	serial.max_in_flight = 1;
	wide.max_in_flight = 16;
	ScriptedProvider p1(plan), p2(plan), p3(plan);
	const auto a = run_pipeline(catwatch_like_contexts(), p1, serial);
	const auto b = run_pipeline(catwatch_like_contexts(), p2, wide);
	const auto c = run_pipeline(catwatch_like_contexts(), p3, wide);
	EXPECT_EQ(pipeline_json(a), pipeline_json(b));
	EXPECT_EQ(pipeline_json(b), pipeline_json(c));
	ASSERT_EQ(a.endpoints.size(), 4u);
	EXPECT_EQ(a.endpoints[0].method.endpoint_path, "/projects/{projectId}");
	EXPECT_EQ(a.endpoints[2].method.endpoint_path, "/statistics/projects");
	EXPECT_EQ(a.endpoints[2].parameters.size(), 3u);
	EXPECT_EQ(a.endpoints[3].parameters[0].constraints.maximum, 100.0);
}

TEST(RunPipeline, FailedEndpointIsOmittedWithDiagnostic) {
	Json plan = Json::parse(slurp(plan_file("catwatch")));
	for (auto& rule : plan["stage_b"])
		if (rule["method"] == "getProject()")
			rule = Json{{"method", "getProject()"}, {"reply", "no JSON here"}};
	ScriptedProvider provider(plan);
	ProviderConfig cfg;
	cfg.max_retries = 1;
	const auto r = run_pipeline(catwatch_like_contexts(), provider, cfg);
	EXPECT_EQ(r.endpoints.size(), 3u);
	bool found = false;
	for (const auto& d : r.diagnostics)
		found = found || (d.find("GET /projects/{projectId}") != std::string::npos && d.find("omitted") != std::string::npos);
	EXPECT_TRUE(found);
}

TEST(RunPipeline, DuplicateAcrossContextsIsDropped) {
	Json plan = {{"stage_a", {{{"match", "A"}, {"reply", Json::parse(R"([{"endpoint_path": "/x", "http_method": "GET", "method_name": "x"}])")}}}},
				 {"stage_b", {{{"method", "x"}, {"reply", Json::parse(R"([{"parameters": [], "response": {"status_code": 200}}])")}}}}};
	ScriptedProvider provider(plan);
	const auto r = run_pipeline({context("A one"), context("A two")}, provider, {});
	EXPECT_EQ(r.endpoints.size(), 1u);
	ASSERT_EQ(r.diagnostics.size(), 1u);
	EXPECT_NE(r.diagnostics[0].find("duplicate endpoint GET /x"), std::string::npos);
}

namespace {

class FailingProvider final : public ChatProvider {
public:
	explicit FailingProvider(std::exception_ptr e) : e_(std::move(e)) {}
	std::string send_chat(const ProviderConfig&, const std::vector<ChatMessage>&) override { std::rethrow_exception(e_); }

private:
	std::exception_ptr e_;
};

} // namespace

TEST(RunPipeline, FatalProviderErrorsPropagate) {
	FailingProvider miss(std::make_exception_ptr(FixtureMiss("abc")));
	EXPECT_THROW(run_pipeline(catwatch_like_contexts(), miss, {}), FixtureMiss);
	FailingProvider auth(std::make_exception_ptr(ProviderError(401, "unauthorized")));
	EXPECT_THROW(run_pipeline(catwatch_like_contexts(), auth, {}), ProviderError);
	FailingProvider transport(std::make_exception_ptr(ProviderError(0, "refused")));
	EXPECT_THROW(run_pipeline(catwatch_like_contexts(), transport, {}), ProviderError);
}

TEST(RunPipeline, NonFatalProviderErrorBecomesDiagnostic) {
	FailingProvider bad(std::make_exception_ptr(ProviderError(400, "bad request")));
	const auto r = run_pipeline(catwatch_like_contexts(), bad, {});
	EXPECT_TRUE(r.endpoints.empty());
	EXPECT_EQ(r.diagnostics.size(), 2u);
}

TEST(RunPipeline, EmptyInput) {
	ScriptedProvider provider(Json::object());
	const auto r = run_pipeline({}, provider, {});
	EXPECT_TRUE(r.endpoints.empty());
	EXPECT_EQ(provider.calls(), 0u);
}
