// SPDX-License-Identifier: Apache-2.0
#include "lrasgen/code_extractor.hpp"
#include "lrasgen/text.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace lrasgen;
using namespace lrasgen::testing;
namespace fs = std::filesystem;

namespace {

const fs::path catwatch_pkg = "src/main/java/org/zalando/catwatch/backend";

fs::path catwatch(const std::string& rel) {
	return fs::canonical(project_fixture("catwatch")) / catwatch_pkg / rel;
}

std::set<std::string> names_of(const std::vector<fs::path>& paths) {
	std::set<std::string> out;
	for (const auto& p : paths)
		out.insert(p.filename().string());
	return out;
}

ScanResult scan(const std::string& project, const std::string& framework) {
	const auto all = builtin_criteria();
	return identify_entry_files(project_fixture(project), *find_criteria(all, framework));
}

} // namespace

TEST(SymbolMap, ListsDeclaredTypes) {
	const auto map = build_symbol_map(project_fixture("catwatch"), "java");
	const auto* stats = map.find_name("ProjectStats");
	ASSERT_NE(stats, nullptr);
	EXPECT_EQ(*stats, catwatch("model/ProjectStats.java"));
	ASSERT_NE(map.find_qualified("org.zalando.catwatch.backend.util.Constants"), nullptr);
	EXPECT_EQ(map.find_name("NoSuchType"), nullptr);
	for (const auto& [name, path] : map.names)
		EXPECT_TRUE(text::is_under(path, fs::canonical(project_fixture("catwatch")))) << name;
}

TEST(SymbolMap, EmptyRoot) {
	const auto map = build_symbol_map(make_temp_dir("sym"), "java");
	EXPECT_TRUE(map.names.empty());
	EXPECT_TRUE(map.qualified.empty());
}

TEST(SymbolMap, CollisionKeepsLaterFileWithDiagnostic) {
	const auto root = make_temp_dir("sym");
	write_text(root / "a" / "Dup.java", "package a;\npublic class Dup {}\n");
	write_text(root / "b" / "Dup.java", "package b;\npublic class Dup {}\n");
	const auto map = build_symbol_map(root, "java");
	ASSERT_NE(map.find_name("Dup"), nullptr);
	EXPECT_EQ(map.find_name("Dup")->parent_path().filename(), "b");
	ASSERT_FALSE(map.diagnostics.empty());
	EXPECT_NE(map.diagnostics[0].find("Dup"), std::string::npos);
	EXPECT_NE(map.find_qualified("a.Dup"), nullptr);
	EXPECT_NE(map.find_qualified("b.Dup"), nullptr);
}

TEST(SymbolMap, PythonAndCSharp) {
	const auto py = build_symbol_map(project_fixture("flask_todo"), "python");
	ASSERT_NE(py.find_name("ItemStore"), nullptr);
	EXPECT_EQ(py.find_name("ItemStore")->filename(), "store.py");
	ASSERT_NE(py.find_qualified("todo.store"), nullptr);
	const auto cs = build_symbol_map(project_fixture("aspnet_orders"), "csharp");
	ASSERT_NE(cs.find_name("OrderService"), nullptr);
	EXPECT_EQ(cs.find_name("OrderService")->filename(), "OrderService.cs");
}

TEST(ResolveImports, StatisticsControllerPullsConstantsAndProjectStats) {
	const auto root = project_fixture("catwatch");
	const auto map = build_symbol_map(root, "java");
	const auto imports = resolve_imports(catwatch("web/StatisticsController.java"), root, map, "java");
	EXPECT_EQ(names_of(imports), (std::set<std::string>{"Constants.java", "Project.java", "ProjectRepository.java",
														"ProjectStats.java", "StringParser.java"}));
	EXPECT_TRUE(std::is_sorted(imports.begin(), imports.end()));
}

TEST(ResolveImports, StandardLibraryOnly) {
	const auto root = make_temp_dir("imp");
	write_text(root / "A.java", "package p;\nimport java.util.List;\nimport org.springframework.web.bind.annotation.GetMapping;\npublic class A {}\n");
	const auto map = build_symbol_map(root, "java");
	EXPECT_TRUE(resolve_imports(root / "A.java", root, map, "java").empty());
}

// Six files with a hand-drawn import graph:
//   A -> B, C      B -> D      C -> D, E      D -> (none)
//   E -> F         F -> A (cycle back to the entry)
TEST(ResolveImports, HandDrawnGraph) {
	const auto root = make_temp_dir("graph");
	const std::map<std::string, std::vector<std::string>> edges{
		{"A", {"B", "C"}}, {"B", {"D"}}, {"C", {"D", "E"}}, {"D", {}}, {"E", {"F"}}, {"F", {"A"}}};
	for (const auto& [name, deps] : edges) {
		std::string body = "package g." + text::to_lower(name) + ";\n";
		for (const auto& d : deps)
			body += "import g." + text::to_lower(d) + "." + d + ";\n";
		body += "import java.util.List;\npublic class " + name + " {}\n";
		write_text(root / text::to_lower(name) / (name + ".java"), body);
	}
	const auto map = build_symbol_map(root, "java");
	for (const auto& [name, deps] : edges) {
		const auto got = resolve_imports(root / text::to_lower(name) / (name + ".java"), root, map, "java");
		std::set<std::string> expected;
		for (const auto& d : deps)
			expected.insert(d + ".java");
		EXPECT_EQ(names_of(got), expected) << name;
	}
	// Two hops from A reach D and E but never A itself.
	const auto two = resolve_imports(root / "a" / "A.java", root, map, "java", 2);
	EXPECT_EQ(names_of(two), (std::set<std::string>{"B.java", "C.java", "D.java", "E.java"}));
	const auto all = resolve_import_graph(root / "a" / "A.java", root, map, "java", 10);
	EXPECT_EQ(all.size(), 5u);
	for (const auto& f : all) {
		if (f.path.filename() == "F.java")
			EXPECT_EQ(f.depth, 3);
		if (f.path.filename() == "B.java")
			EXPECT_EQ(f.depth, 1);
	}
}

TEST(ResolveImports, PythonFromImport) {
	const auto root = project_fixture("flask_todo");
	const auto map = build_symbol_map(root, "python");
	const auto got = resolve_imports(fs::canonical(root) / "todo/api/items.py", root, map, "python");
	EXPECT_EQ(names_of(got), std::set<std::string>{"store.py"});
}

TEST(ResolveImports, CSharpUsingNamespace) {
	const auto root = project_fixture("aspnet_orders");
	const auto map = build_symbol_map(root, "csharp");
	const auto got = resolve_imports(fs::canonical(root) / "Controllers/OrdersController.cs", root, map, "csharp");
	EXPECT_EQ(names_of(got), (std::set<std::string>{"Order.cs", "OrderService.cs"}));
}

TEST(CleanCode, KeepsControllerAnnotations) {
	const auto raw = slurp(catwatch("web/StatisticsController.java"));
	const auto cleaned = clean_code(raw);
	EXPECT_NE(cleaned.find(R"(@RequestMapping(value = "/projects", method = RequestMethod.GET))"), std::string::npos);
	for (const char* p : {"API_REQUEST_PARAM_ORGANIZATIONS", "API_REQUEST_PARAM_STARTDATE", "API_REQUEST_PARAM_ENDDATE"})
		EXPECT_NE(cleaned.find(std::string("@RequestParam(value = Constants.") + p), std::string::npos) << p;
	EXPECT_EQ(cleaned.find("Licensed under"), std::string::npos);
	EXPECT_EQ(cleaned.find("logger.info"), std::string::npos);
	EXPECT_EQ(cleaned.find("import java.util.List;"), std::string::npos);
	EXPECT_NE(cleaned.find("import org.zalando.catwatch.backend.util.Constants;"), std::string::npos);
	EXPECT_NE(cleaned.find("// only top 10 by last score"), std::string::npos);
}

TEST(CleanCode, EmptyText) {
	EXPECT_EQ(clean_code(""), "");
	EXPECT_EQ(clean_code("\n\n   \n"), "");
}

TEST(CleanCode, RemovesTheFourCategories) {
	const std::string src = "# Copyright 2020 Someone\n"
							"# Licensed under MIT\n"
							"import os\n"
							"from todo.store import ItemStore\n"
							"\n"
							"@bp.route('/x')\n"
							"def x():\n"
							"    print('hello')\n"
							"    logging.info('hi')\n"
							"    # keep me\n"
							"    return ItemStore()\n";
	EXPECT_EQ(clean_code(src), "from todo.store import ItemStore\n"
							   "@bp.route('/x')\n"
							   "def x():\n"
							   "    # keep me\n"
							   "    return ItemStore()");
}

TEST(CleanCode, MultiLineLoggingCallIsKept) {
	const std::string src = "log.info(\"a\",\n    b);";
	EXPECT_EQ(clean_code(src), src);
}

TEST(CleanCode, NeverDropsAnnotationLines) {
	const std::string src = "@RequestMapping(value = \"/a\")\n[HttpGet(\"x\")]\n@app.route('/p')";
	EXPECT_EQ(clean_code(src), src);
}

TEST(CleanCode, IdempotentAndShrinkingOnEveryFixtureFile) {
	for (const char* project : {"catwatch", "jersey_library", "flask_todo", "django_blog", "webpy_notes", "aspnet_orders"}) {
		for (const auto& f : walk_files(project_fixture(project), "")) {
			const auto raw = *text::read_file(f);
			const auto once = clean_code(raw);
			EXPECT_EQ(clean_code(once), once) << f;
			EXPECT_LE(once.size(), raw.size()) << f;
			for (auto line : text::split_lines(once))
				EXPECT_FALSE(text::trim(line).empty()) << f;
		}
	}
}

TEST(EstimateTokens, CharactersOverFour) {
	EXPECT_EQ(estimate_tokens(0), 0u);
	EXPECT_EQ(estimate_tokens(1), 1u);
	EXPECT_EQ(estimate_tokens(4), 1u);
	EXPECT_EQ(estimate_tokens(5), 2u);
	EXPECT_EQ(estimate_tokens(400), 100u);
}

TEST(BuildContexts, SingleControllerIncludesConstants) {
	const auto s = scan("catwatch", "spring_boot");
	ExtractOptions opts;
	opts.language = "java";
	const auto contexts = build_contexts(s, project_fixture("catwatch"), opts);
	ASSERT_EQ(contexts.size(), 2u);
	const auto& stats = contexts[1];
	EXPECT_EQ(stats.entry_file.filename(), "StatisticsController.java");
	EXPECT_TRUE(stats.related.count(catwatch("util/Constants.java")));
	EXPECT_GE(stats.token_estimate, 1u);
	const auto root = fs::canonical(project_fixture("catwatch"));
	for (const auto& [path, code] : stats.related) {
		EXPECT_TRUE(text::is_under(path, root)) << path;
		EXPECT_NE(path, stats.entry_file);
	}
	const auto bundle = stats.bundle_text();
	EXPECT_EQ(bundle.rfind("File: " + (catwatch_pkg / "web/StatisticsController.java").generic_string() + "\n", 0), 0u);
	EXPECT_NE(bundle.find("File: " + (catwatch_pkg / "util/Constants.java").generic_string()), std::string::npos);
	EXPECT_EQ(stats.entry_with_configuration(), stats.cleaned_entry);
}

TEST(BuildContexts, ZeroEntryFiles) {
	ScanResult empty;
	EXPECT_TRUE(build_contexts(empty, project_fixture("catwatch"), {}).empty());
}

TEST(BuildContexts, DjangoContextCarriesUrlsPy) {
	const auto s = scan("django_blog", "django");
	ExtractOptions opts;
	opts.language = "python";
	const auto contexts = build_contexts(s, project_fixture("django_blog"), opts);
	ASSERT_EQ(contexts.size(), 2u);
	for (const auto& ctx : contexts) {
		ASSERT_EQ(ctx.configuration_files.size(), 1u);
		EXPECT_EQ(ctx.configuration_files[0].filename(), "urls.py");
		EXPECT_TRUE(ctx.related.count(ctx.configuration_files[0]));
		EXPECT_NE(ctx.entry_with_configuration().find("urlpatterns"), std::string::npos);
	}
	const auto& blog = contexts[1];
	EXPECT_EQ(blog.entry_file.parent_path().filename(), "blog");
	EXPECT_TRUE(blog.related.count(fs::canonical(project_fixture("django_blog")) / "blog/models.py"));
}

TEST(BuildContexts, Deterministic) {
	const auto s = scan("catwatch", "spring_boot");
	ExtractOptions opts;
	const auto a = build_contexts(s, project_fixture("catwatch"), opts);
	const auto b = build_contexts(s, project_fixture("catwatch"), opts);
	ASSERT_EQ(a.size(), b.size());
	for (std::size_t i = 0; i < a.size(); ++i)
		EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
}

TEST(BuildContexts, ImportDepthTwoAddsTransitiveFiles) {
	const auto s = scan("jersey_library", "jersey");
	ExtractOptions one, two;
	two.import_depth = 2;
	const auto a = build_contexts(s, project_fixture("jersey_library"), one);
	const auto b = build_contexts(s, project_fixture("jersey_library"), two);
	for (std::size_t i = 0; i < a.size(); ++i)
		EXPECT_LE(a[i].related.size(), b[i].related.size());
}

TEST(BuildContexts, OverBudgetDropsDeepestThenLargest) {
	const auto root = make_temp_dir("budget");
	write_text(root / "p" / "Entry.java",
			   "package p;\nimport p.Small;\nimport p.Big;\n@GetMapping(\"/x\")\npublic class Entry {}\n");
	write_text(root / "p" / "Small.java", "package p;\nimport p.Deep;\npublic class Small { int a; }\n");
	write_text(root / "p" / "Big.java", "package p;\npublic class Big {\n" + std::string(2000, 'x') + "\n}\n");
	write_text(root / "p" / "Deep.java", "package p;\npublic class Deep { int d; }\n");
	const auto all = builtin_criteria();
	const auto s = identify_entry_files(root, *find_criteria(all, "spring_boot"));
	ASSERT_EQ(s.entry_files.size(), 1u);
	ExtractOptions opts;
	opts.import_depth = 2;
	const auto unbounded = build_contexts(s, root, opts);
	ASSERT_EQ(unbounded[0].related.size(), 3u);

	opts.response_reserve = 10;
	opts.context_window = unbounded[0].token_estimate + 10 - 1; // one token short
	const auto tight = build_contexts(s, root, opts);
	EXPECT_EQ(tight[0].related.size(), 2u);
	EXPECT_FALSE(tight[0].related.count(fs::canonical(root) / "p/Deep.java"));
	ASSERT_FALSE(tight[0].diagnostics.empty());
	EXPECT_NE(tight[0].diagnostics[0].find("Deep.java"), std::string::npos);

	opts.context_window = 10 + 1;
	const auto tiny = build_contexts(s, root, opts);
	EXPECT_TRUE(tiny[0].related.empty());
	EXPECT_NE(tiny[0].diagnostics.back().find("exceeds the token budget"), std::string::npos);
}
