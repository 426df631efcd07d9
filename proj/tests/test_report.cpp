#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "parabend/report.hpp"

using namespace parabend;
using namespace parabend::report;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("valid file with comments") {
    const auto path = write_temp("parabend_cfg_ok.txt",
                                 "# run setup\n"
                                 "seed = 42\n"
                                 "end.alpha1 = 1/6\n"
                                 "end.alpha2 = 1/2\n"
                                 "end.c_list = 0.5, 1, 2\n"
                                 "cap.j_list = 1,2,3\n"
                                 "tol.scalar = 2e-3\n"
                                 "parallel = true\n");
    const auto cfg = parse_config(path);
    CHECK(cfg.seed == 42);
    CHECK(cfg.alpha1 == Rational(1, 6));
    CHECK(cfg.alpha2 == Rational(1, 2));
    CHECK(cfg.curvature_values == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(cfg.j_list == std::vector<int>{1, 2, 3});
    CHECK(cfg.tol_scalar == 2e-3);
    CHECK(cfg.parallel);
    CHECK(cfg.exec() == Exec::kParallel);
  }

  SUBCASE("unknown key") {
    const auto path = write_temp("parabend_cfg_bad1.txt", "frobnicate = 7\n");
    CHECK_THROWS_AS(parse_config(path), ParseError);
  }

  SUBCASE("malformed number") {
    const auto path = write_temp("parabend_cfg_bad2.txt", "tol.scalar = banana\n");
    CHECK_THROWS_AS(parse_config(path), ParseError);
  }

  SUBCASE("missing file") { CHECK_THROWS_AS(parse_config("/nonexistent/cfg"), ParseError); }

  SUBCASE("non-positive tolerance") {
    const auto path = write_temp("parabend_cfg_bad3.txt", "tol.scalar = 0\n");
    CHECK_THROWS_AS(parse_config(path), ParseError);
  }
}

TEST_CASE("check semantics") {
  const auto ok = make_check("a", "s", 1.0005, 1.0, 1e-3, CheckKind::kAbsolute,
                             Provenance::kPaper, "x");
  CHECK(ok.pass);
  const auto bad = make_check("a", "s", 1.01, 1.0, 1e-3, CheckKind::kAbsolute,
                              Provenance::kPaper, "x");
  CHECK_FALSE(bad.pass);
  const auto bound = make_check("b", "s", 0.2, 0.1, 0.0, CheckKind::kLowerBound,
                                Provenance::kDerived, "x");
  CHECK(bound.pass);
  const auto under = make_check("b", "s", 0.05, 0.1, 1e-3, CheckKind::kLowerBound,
                                Provenance::kDerived, "x");
  CHECK_FALSE(under.pass);
}

TEST_CASE("report emission") {
  std::vector<CheckResult> results;
  results.push_back(make_check("one", "geometry", 0.123456789012345678, 0.125, 1e-2,
                               CheckKind::kAbsolute, Provenance::kPaper, "s = 2(c-1)"));
  results.push_back(make_check("two", "geometry", 3.0, 0.0, 0.0, CheckKind::kLowerBound,
                               Provenance::kTrivial, "positive"));

  const auto dir = std::filesystem::temp_directory_path() / "parabend_report";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "report.json").string();

  SUBCASE("roundtrip preserves fields") {
    emit_report(results, path);
    const auto doc = nlohmann::json::parse(slurp(path));
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["id"] == "one");
    CHECK(doc[0]["provenance"] == "paper");
    CHECK(doc[0]["pass"] == true);
    CHECK(doc[0]["computed"].get<double>() == results[0].computed);  // exact roundtrip
    CHECK(doc[1]["kind"] == "lower_bound");
  }

  SUBCASE("empty list is a valid empty array") {
    emit_report({}, path);
    const auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc.is_array());
    CHECK(doc.empty());
  }

  SUBCASE("byte-identical reruns") {
    emit_report(results, path);
    const auto first = slurp(path);
    emit_report(results, path);
    CHECK(first == slurp(path));
  }
}

TEST_CASE("suite runner determinism and dispatch") {
  RunConfig cfg;
  cfg.out_dir = (std::filesystem::temp_directory_path() / "parabend_suites").string();

  CHECK_THROWS_AS(run_suite(cfg, "nope"), UnknownSuite);

  const auto a = run_suite(cfg, "cohomology");
  const auto b = run_suite(cfg, "cohomology");
  REQUIRE(a.size() == b.size());
  CHECK(a.size() > 10);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].computed == b[i].computed);  // bitwise
    CHECK(a[i].pass);
  }

  const auto path1 = cfg.out_dir + "/r1.json";
  const auto path2 = cfg.out_dir + "/r2.json";
  emit_report(a, path1);
  emit_report(b, path2);
  CHECK(slurp(path1) == slurp(path2));

  const auto stab = run_suite(cfg, "stability");
  CHECK(stab.size() > 15);
  for (const auto& r : stab) CHECK(r.pass);

  CHECK(format_double(0.1) == "0.10000000000000001");
}
