// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/cli.hpp"

#include "lrasgen/code_extractor.hpp"
#include "lrasgen/evaluator.hpp"
#include "lrasgen/framework_registry.hpp"
#include "lrasgen/llm/orchestrator.hpp"
#include "lrasgen/oas_assembler.hpp"
#include "lrasgen/project_scanner.hpp"
#include "lrasgen/schema_validator.hpp"
#include "lrasgen/text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace lrasgen {

int exit_code_for(ErrorCategory category) noexcept {
	switch (category) {
	case ErrorCategory::usage: return exit_usage;
	case ErrorCategory::scan: return exit_scan;
	case ErrorCategory::provider: return exit_provider;
	case ErrorCategory::schema: return exit_schema;
	case ErrorCategory::assembly: return exit_assembly;
	case ErrorCategory::io: return exit_io;
	}
	return exit_internal;
}

CliEnvironment default_environment() {
	CliEnvironment env;
	env.getenv = [](const std::string& name) -> std::optional<std::string> {
		if (const char* v = std::getenv(name.c_str()))
			return std::string(v);
		return std::nullopt;
	};
	env.live_provider = [](const std::string& key) -> std::unique_ptr<ChatProvider> {
		return std::make_unique<HttpChatProvider>(key);
	};
	return env;
}

namespace {

Error usage_error(const std::string& message) {
	return Error(ErrorCategory::usage, message);
}

Json read_json_file(const fs::path& path, ErrorCategory category = ErrorCategory::io) {
	auto content = text::read_file(path);
	if (!content)
		throw Error(category, "cannot read " + path.string());
	try {
		return parse_document_text(*content);
	} catch (const Json::exception& e) {
		throw Error(category, "malformed JSON in " + path.string() + ": " + e.what());
	}
}

void write_file(const fs::path& path, const std::string& content) {
	if (path.has_parent_path())
		fs::create_directories(path.parent_path());
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	out << content;
	out.close();
	if (!out)
		throw Error(ErrorCategory::io, "cannot write " + path.string());
}

// Raw option values as given on the command line; unset means "not given".
struct GenerateFlags {
	std::string root;
	std::optional<std::string> framework;
	std::optional<std::string> criteria;
	std::optional<std::string> model;
	std::optional<std::string> endpoint_url;
	std::optional<double> temperature;
	std::optional<int> import_depth;
	bool offline = false;
	std::optional<std::string> fixtures;
	std::optional<std::string> output;
	bool yaml = false;
	std::optional<std::string> report;
	std::optional<std::string> dump_contexts;
	std::optional<std::string> title;
	std::optional<int> max_in_flight;
	std::optional<int> max_retries;
};

void add_generate_options(CLI::App& cmd, GenerateFlags& f) {
	cmd.add_option("--root", f.root, "Project root directory")->required();
	cmd.add_option("--framework", f.framework, "Framework name, or 'auto'");
	cmd.add_option("--criteria", f.criteria, "JSON file with extra or replacement framework criteria");
	cmd.add_option("--model", f.model, "Chat model name");
	cmd.add_option("--endpoint-url", f.endpoint_url, "OpenAI-compatible chat completions URL");
	cmd.add_option("--temperature", f.temperature, "Sampling temperature (default 0.2)");
	cmd.add_option("--import-depth", f.import_depth, "Import hops followed from each entry file (default 1)")
		->check(CLI::PositiveNumber);
	cmd.add_flag("--offline", f.offline, "Replay recorded replies instead of calling the model");
	cmd.add_option("--fixtures", f.fixtures, "Fixture directory");
	cmd.add_option("--output", f.output, "Output file");
	cmd.add_flag("--yaml", f.yaml, "Write YAML instead of JSON");
	cmd.add_option("--report", f.report, "Write a JSON run report");
	cmd.add_option("--dump-contexts", f.dump_contexts, "Write the extracted endpoint contexts as JSON");
	cmd.add_option("--title", f.title, "info.title of the generated document");
	cmd.add_option("--max-in-flight", f.max_in_flight, "Concurrent model requests (default 4)")
		->check(CLI::PositiveNumber);
	cmd.add_option("--max-retries", f.max_retries, "Corrective re-asks per request (default 3)")
		->check(CLI::NonNegativeNumber);
}

template <typename T>
std::optional<T> config_value(const Json& config, const char* key) {
	auto it = config.find(key);
	if (it == config.end() || it->is_null())
		return std::nullopt;
	try {
		return it->get<T>();
	} catch (const Json::exception&) {
		throw usage_error(std::string(".lrasgen.json: '") + key + "' has the wrong type");
	}
}

template <typename T>
T pick(const std::optional<T>& flag, const std::optional<T>& env, const std::optional<T>& config, T fallback) {
	if (flag)
		return *flag;
	if (env)
		return *env;
	if (config)
		return *config;
	return fallback;
}

std::optional<double> parse_double_env(const std::optional<std::string>& v, const char* name) {
	if (!v)
		return std::nullopt;
	try {
		return std::stod(*v);
	} catch (const std::exception&) {
		throw usage_error(std::string("environment variable ") + name + " is not a number");
	}
}

// flags > environment > .lrasgen.json > defaults
RunConfig resolve_config(const GenerateFlags& f, const CliEnvironment& env) {
	RunConfig cfg;
	cfg.project_root = f.root;
	std::error_code ec;
	if (!fs::is_directory(cfg.project_root, ec))
		throw RootNotFound(f.root);
	cfg.project_root = text::normalize_path(cfg.project_root);

	Json config = Json::object();
	const fs::path config_path = cfg.project_root / ".lrasgen.json";
	if (fs::is_regular_file(config_path, ec)) {
		config = read_json_file(config_path, ErrorCategory::usage);
		if (!config.is_object())
			throw usage_error(".lrasgen.json must hold a JSON object");
	}
	const auto getenv = [&](const char* name) { return env.getenv ? env.getenv(name) : std::nullopt; };

	cfg.framework = pick<std::string>(f.framework, getenv("LRASGEN_FRAMEWORK"), config_value<std::string>(config, "framework"), "auto");
	if (auto c = f.criteria ? f.criteria : config_value<std::string>(config, "criteria")) {
		fs::path p(*c);
		cfg.criteria_file = p.is_absolute() || f.criteria ? p : cfg.project_root / p;
	}
	cfg.provider.model = pick<std::string>(f.model, getenv("LRASGEN_MODEL"), config_value<std::string>(config, "model"),
										   cfg.provider.model);
	cfg.provider.endpoint_url = pick<std::string>(f.endpoint_url, getenv("LRASGEN_ENDPOINT_URL"),
												  config_value<std::string>(config, "endpoint_url"),
												  cfg.provider.endpoint_url);
	cfg.provider.temperature = pick<double>(f.temperature, parse_double_env(getenv("LRASGEN_TEMPERATURE"), "LRASGEN_TEMPERATURE"),
											config_value<double>(config, "temperature"), cfg.provider.temperature);
	cfg.import_depth = pick<int>(f.import_depth, std::nullopt, config_value<int>(config, "import_depth"), 1);
	if (cfg.import_depth < 1)
		throw usage_error("import depth must be at least 1");
	if (auto n = pick<int>(f.max_in_flight, std::nullopt, config_value<int>(config, "max_in_flight"), 0); n > 0)
		cfg.provider.max_in_flight = static_cast<std::size_t>(n);
	cfg.provider.max_retries = pick<int>(f.max_retries, std::nullopt, config_value<int>(config, "max_retries"),
										 cfg.provider.max_retries);
	if (auto w = config_value<std::size_t>(config, "context_window"))
		cfg.provider.context_window = *w;

	cfg.offline = f.offline || config_value<bool>(config, "offline").value_or(false);
	if (f.fixtures)
		cfg.fixtures = fs::path(*f.fixtures);
	else if (auto c = config_value<std::string>(config, "fixtures"))
		cfg.fixtures = fs::path(*c).is_absolute() ? fs::path(*c) : cfg.project_root / *c;

	cfg.yaml = f.yaml;
	cfg.title = f.title ? *f.title : config_value<std::string>(config, "title").value_or(cfg.project_root.filename().string());
	const std::string default_output = cfg.project_root.filename().string() + (cfg.yaml ? ".openapi.yaml" : ".openapi.json");
	cfg.output = f.output ? fs::path(*f.output) : fs::path(config_value<std::string>(config, "output").value_or(default_output));
	if (f.report)
		cfg.report = fs::path(*f.report);
	if (f.dump_contexts)
		cfg.dump_contexts = fs::path(*f.dump_contexts);
	return cfg;
}

std::vector<FrameworkCriteria> load_all_criteria(const std::optional<fs::path>& file) {
	if (!file)
		return builtin_criteria();
	auto content = text::read_file(*file);
	if (!content)
		throw usage_error("cannot read criteria file " + file->string());
	return load_criteria(*content);
}

// Runs the chosen framework, or with "auto" every framework, keeping the one
// with the most entry files (earlier registry entries win ties).
std::pair<ScanResult, FrameworkCriteria> scan_project(const fs::path& root, const std::string& framework,
													  const std::vector<FrameworkCriteria>& all) {
	if (framework != "auto") {
		const FrameworkCriteria* c = find_criteria(all, framework);
		if (!c) {
			std::string names;
			for (const auto& a : all)
				names += (names.empty() ? "" : ", ") + a.name;
			throw usage_error("unknown framework '" + framework + "' (known: " + names + ")");
		}
		return {identify_entry_files(root, *c), *c};
	}
	std::optional<std::pair<ScanResult, FrameworkCriteria>> best;
	for (const auto& c : all) {
		ScanResult r = identify_entry_files(root, c);
		if (!best || r.entry_files.size() > best->first.entry_files.size())
			best.emplace(std::move(r), c);
	}
	return std::move(*best);
}

struct Counts {
	std::size_t endpoints = 0, parameters = 0, constraints = 0, responses = 0;
};

Counts count_entities(const Json& doc) {
	const EntitySets e = extract_entities(doc, {.required_as_constraint = false});
	return {e.methods.size(), e.parameters.size(), e.constraints.size(), e.responses.size()};
}

void print_diagnostics(std::ostream& err, const std::vector<std::string>& diagnostics) {
	for (const auto& d : diagnostics)
		err << "warning: " << d << '\n';
}

int generate(const RunConfig& cfg, ChatProvider& provider, std::ostream& out, std::ostream& err,
			 const std::string& command) {
	const auto all = load_all_criteria(cfg.criteria_file);
	auto [scan, criteria] = scan_project(cfg.project_root, cfg.framework, all);
	std::vector<std::string> diagnostics = scan.diagnostics;
	if (scan.entry_files.empty())
		diagnostics.push_back("no endpoint entry files found under " + cfg.project_root.string() +
							  "; the document will have no paths");

	ExtractOptions options;
	options.import_depth = cfg.import_depth;
	options.context_window = cfg.provider.context_window;
	options.language = criteria.language;
	const auto contexts = build_contexts(scan, cfg.project_root, options);
	for (const auto& ctx : contexts)
		diagnostics.insert(diagnostics.end(), ctx.diagnostics.begin(), ctx.diagnostics.end());
	if (cfg.dump_contexts) {
		Json dump = Json::array();
		for (const auto& ctx : contexts)
			dump.push_back(to_json(ctx));
		write_file(*cfg.dump_contexts, dump.dump(2) + "\n");
	}

	PipelineResult result = run_pipeline(contexts, provider, cfg.provider);
	diagnostics.insert(diagnostics.end(), result.diagnostics.begin(), result.diagnostics.end());

	OasInfo info;
	info.title = cfg.title;
	OasDocument doc = assemble(result.endpoints, info);
	diagnostics.insert(diagnostics.end(), doc.diagnostics.begin(), doc.diagnostics.end());

	const Json document = doc.to_json();
	const auto issues = validate_oas(document);
	if (!issues.empty()) {
		std::string message = "generated document violates the OAS 3.1 meta-schema:";
		for (std::size_t i = 0; i < std::min<std::size_t>(issues.size(), 10); ++i)
			message += "\n  " + (issues[i].instance_path.empty() ? "/" : issues[i].instance_path) + ": " + issues[i].message;
		throw SchemaViolation(message);
	}
	write_file(cfg.output, serialize(doc, cfg.yaml ? OutputFormat::yaml : OutputFormat::json));
	print_diagnostics(err, diagnostics);

	const Counts counts = count_entities(document);
	out << "framework: " << criteria.name << '\n'
		<< "entry files: " << scan.entry_files.size() << '\n'
		<< "endpoints: " << counts.endpoints << ", parameters: " << counts.parameters
		<< ", constraints: " << counts.constraints << ", responses: " << counts.responses << '\n'
		<< "wrote " << cfg.output.string() << '\n';

	if (cfg.report) {
		Json report{{"command", command},
					{"root", cfg.project_root.string()},
					{"framework", criteria.name},
					{"entry_files", Json::array()},
					{"model", cfg.provider.model},
					{"offline", cfg.offline},
					{"output", cfg.output.string()},
					{"counts",
					 {{"endpoints", counts.endpoints},
					  {"parameters", counts.parameters},
					  {"constraints", counts.constraints},
					  {"responses", counts.responses}}},
					{"diagnostics", diagnostics}};
		for (const auto& f : scan.entry_files)
			report["entry_files"].push_back(text::relative_display(f, cfg.project_root));
		write_file(*cfg.report, report.dump(2) + "\n");
	}
	return exit_ok;
}

std::string require_api_key(const RunConfig& cfg, const CliEnvironment& env) {
	std::optional<std::string> key = env.getenv ? env.getenv(cfg.provider.api_key_env) : std::nullopt;
	if (!key || text::trim(*key).empty())
		throw Error(ErrorCategory::provider, "no API key: set " + cfg.provider.api_key_env +
												 " or run with --offline --fixtures DIR");
	return *key;
}

int cmd_generate(const GenerateFlags& f, const CliEnvironment& env, std::ostream& out, std::ostream& err) {
	const RunConfig cfg = resolve_config(f, env);
	if (cfg.offline) {
		if (!cfg.fixtures)
			throw usage_error("--offline requires --fixtures DIR");
		std::error_code ec;
		if (!fs::is_directory(*cfg.fixtures, ec))
			throw usage_error("fixture directory not found: " + cfg.fixtures->string());
		FixtureProvider provider(*cfg.fixtures);
		return generate(cfg, provider, out, err, "generate");
	}
	const std::string key = require_api_key(cfg, env);
	auto provider = env.live_provider(key);
	return generate(cfg, *provider, out, err, "generate");
}

int cmd_record(const GenerateFlags& f, const CliEnvironment& env, std::ostream& out, std::ostream& err) {
	const RunConfig cfg = resolve_config(f, env);
	if (!cfg.fixtures)
		throw usage_error("record-fixtures requires --fixtures DIR");
	if (cfg.offline)
		throw usage_error("record-fixtures needs a live model; drop --offline");
	const std::string key = require_api_key(cfg, env);
	auto live = env.live_provider(key);
	RecordingProvider recorder(*live, *cfg.fixtures);
	const int status = generate(cfg, recorder, out, err, "record-fixtures");
	out << "recorded " << recorder.recorded() << " exchanges in " << cfg.fixtures->string() << '\n';
	return status;
}

int cmd_scan(const std::string& root, const std::optional<std::string>& framework,
			 const std::optional<std::string>& criteria, const std::string& format, std::ostream& out) {
	std::error_code ec;
	if (!fs::is_directory(root, ec))
		throw RootNotFound(root);
	const fs::path r = text::normalize_path(root);
	const auto all = load_all_criteria(criteria ? std::optional<fs::path>(*criteria) : std::nullopt);
	auto [scan, c] = scan_project(r, framework.value_or("auto"), all);
	if (format == "json") {
		Json j = to_json(scan);
		out << j.dump(2) << '\n';
		return exit_ok;
	}
	out << "framework: " << scan.framework << '\n';
	out << "entry files (" << scan.entry_files.size() << "):\n";
	for (const auto& e : scan.entry_files)
		out << "  " << text::relative_display(e, r) << '\n';
	out << "configuration files (" << scan.configuration_files_found.size() << "):\n";
	for (const auto& e : scan.configuration_files_found)
		out << "  " << text::relative_display(e, r) << '\n';
	for (const auto& d : scan.diagnostics)
		out << "warning: " << d << '\n';
	return exit_ok;
}

Json load_spec(const std::string& path) {
	return read_json_file(path, ErrorCategory::io);
}

int cmd_evaluate(const std::string& spec, const std::string& truth, const std::string& format, bool required_as_constraint,
				 std::ostream& out) {
	const EntitySets generated = extract_entities(load_spec(spec), {.required_as_constraint = required_as_constraint});
	const EntitySets gt = load_ground_truth(read_json_file(truth, ErrorCategory::io));
	const EvalReport report = score(generated, gt);
	if (format == "json")
		out << eval_to_json(report).dump(2) << '\n';
	else
		out << format_eval_table(report);
	return exit_ok;
}

int cmd_diff(const std::optional<std::string>& generated, const std::optional<std::string>& developer,
			 const std::optional<std::string>& counts, const std::string& format, bool required_as_constraint,
			 std::ostream& out) {
	DiffReport report;
	if (counts) {
		if (generated || developer)
			throw usage_error("--counts cannot be combined with --generated/--developer");
		report = count_diff_report(load_count_table(read_json_file(*counts, ErrorCategory::io)));
	} else {
		if (!generated || !developer)
			throw usage_error("diff needs --generated and --developer, or --counts");
		const ExtractOptionsEval options{.required_as_constraint = required_as_constraint};
		const EntitySets g = extract_entities(load_spec(*generated), options);
		const EntitySets d = extract_entities(load_spec(*developer), options);
		report = make_diff_report({diff_against_developer(g, d, fs::path(*generated).stem().string())});
	}
	if (format == "json")
		out << diff_to_json(report).dump(2) << '\n';
	else
		out << format_diff_table(report);
	return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnvironment& env) {
	CLI::App app{"Generates OpenAPI 3.1.1 documents from REST API source code with an LLM", "lrasgen"};
	app.require_subcommand(1);
	app.set_version_flag("--version", "lrasgen 0.1.0");

	GenerateFlags gen_flags;
	auto* gen = app.add_subcommand("generate", "Scan, extract, query the model and write an OpenAPI document");
	add_generate_options(*gen, gen_flags);

	GenerateFlags rec_flags;
	auto* rec = app.add_subcommand("record-fixtures", "Like generate, recording every model exchange as a fixture");
	add_generate_options(*rec, rec_flags);

	std::string scan_root, scan_format = "table";
	std::optional<std::string> scan_framework, scan_criteria;
	auto* scan = app.add_subcommand("scan", "List endpoint entry files");
	scan->add_option("--root", scan_root, "Project root directory")->required();
	scan->add_option("--framework", scan_framework, "Framework name, or 'auto'");
	scan->add_option("--criteria", scan_criteria, "JSON file with extra framework criteria");
	scan->add_option("--format", scan_format, "table or json")->check(CLI::IsMember({"table", "json"}));

	std::string eval_spec, eval_truth, eval_format = "table";
	bool eval_required = true;
	auto* eval = app.add_subcommand("evaluate", "Score a document against a ground-truth entity list");
	eval->add_option("--spec", eval_spec, "Generated OpenAPI document")->required();
	eval->add_option("--truth", eval_truth, "Ground-truth JSON")->required();
	eval->add_option("--format", eval_format, "table or json")->check(CLI::IsMember({"table", "json"}));
	eval->add_option("--required-as-constraint", eval_required, "Count required=true as a constraint (default true)");

	std::optional<std::string> diff_generated, diff_developer, diff_counts;
	std::string diff_format = "table";
	bool diff_required = true;
	auto* diff = app.add_subcommand("diff", "Compare a generated document with a developer-provided one");
	diff->add_option("--generated", diff_generated, "Generated OpenAPI document");
	diff->add_option("--developer", diff_developer, "Developer-provided OpenAPI document");
	diff->add_option("--counts", diff_counts, "Per-API count table instead of two documents");
	diff->add_option("--format", diff_format, "table or json")->check(CLI::IsMember({"table", "json"}));
	diff->add_option("--required-as-constraint", diff_required, "Count required=true as a constraint (default true)");

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? exit_ok : exit_usage;
	}

	try {
		if (gen->parsed())
			return cmd_generate(gen_flags, env, out, err);
		if (rec->parsed())
			return cmd_record(rec_flags, env, out, err);
		if (scan->parsed())
			return cmd_scan(scan_root, scan_framework, scan_criteria, scan_format, out);
		if (eval->parsed())
			return cmd_evaluate(eval_spec, eval_truth, eval_format, eval_required, out);
		if (diff->parsed())
			return cmd_diff(diff_generated, diff_developer, diff_counts, diff_format, diff_required, out);
	} catch (const Error& e) {
		err << "error (" << to_string(e.category()) << "): " << e.what() << '\n';
		return exit_code_for(e.category());
	} catch (const fs::filesystem_error& e) {
		err << "error (io): " << e.what() << '\n';
		return exit_io;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return exit_internal;
	}
	return exit_usage;
}

} // namespace lrasgen
