#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "parabend/cap.hpp"
#include "parabend/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"verifylab: runs the verification suites and writes machine-readable reports"};

  std::string config_path;
  std::string suite = "all";
  std::string out_dir;
  bool parallel = false;
  bool dump_profile = false;

  app.add_option("--config", config_path, "run configuration file (key = value)");
  app.add_option("--suite", suite,
                 "suite to run: stability, geometry, smoothing, spectrum, cohomology, all");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_flag("--parallel", parallel, "run checks within a suite over OpenMP threads");
  app.add_flag("--dump-profile", dump_profile,
               "write the cap profile breakpoint/coefficient tables and exit");

  CLI11_PARSE(app, argc, argv);

  parabend::report::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = parabend::report::parse_config(config_path);
  } catch (const parabend::report::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (parallel) cfg.parallel = true;

  try {
    std::filesystem::create_directories(cfg.out_dir);

    if (dump_profile) {
      for (int j : cfg.j_list) {
        const auto profile =
            parabend::cap::build_cap_profile(j, cfg.delta_scale * std::exp(-j), cfg.cap_eps);
        const std::string path = cfg.out_dir + "/profile_j" + std::to_string(j) + ".txt";
        std::ofstream out(path, std::ios::binary);
        out << profile.dump();
        std::cout << "wrote " << path << "\n";
      }
      return 0;
    }

    const auto results = parabend::report::run_suite(cfg, suite);
    parabend::report::emit_report(results, cfg.out_dir + "/report.json");

    int failed = 0;
    for (const auto& r : results) {
      if (!r.pass) ++failed;
      std::printf("[%s] %-34s computed=%.10g expected%s%.10g tol=%.2g (%s)\n",
                  r.pass ? "PASS" : "FAIL", r.id.c_str(), r.computed,
                  r.kind == parabend::report::CheckKind::kAbsolute ? "=" : ">=", r.expected,
                  r.tolerance, parabend::report::provenance_label(r.provenance).c_str());
    }
    std::printf("%zu checks, %d failed; report at %s/report.json\n", results.size(), failed,
                cfg.out_dir.c_str());
    return failed == 0 ? 0 : 1;
  } catch (const parabend::report::UnknownSuite& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
