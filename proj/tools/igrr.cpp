// Command-line front end: exact verification of scaled characteristic-class
// identities on desk-scale models.
//
// Subcommands:
//   constants  --range N            table of m, m!, T_m, T_m/m!, B_m
//   class      ch|td|tdinv|s|tdpart|ct ...
//   verify     [files...]           run instance documents (default: the
//                                   bundled fixture directory, or the
//                                   directory named by $GRR_FIXTURES)
//
// Exit codes: 0 all checks pass; 1 at least one check fails; 2 usage,
// schema or violated-precondition errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "igrr/driver.hpp"
#include "igrr/numbers.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw igrr::SchemaError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw igrr::SchemaError("cannot write file: " + out_path);
  out << text;
}

std::vector<std::string> fixture_files(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  }
  if (ec) throw igrr::SchemaError("cannot read fixture directory: " + dir);
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw igrr::SchemaError("no .json fixture files in: " + dir);
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of scaled characteristic-class identities"};
  app.require_subcommand(1);

  // ---- constants ----------------------------------------------------------
  auto* cmd_constants = app.add_subcommand(
      "constants", "table of m, m!, T_m, T_m/m!, B_m for m = 0..range");
  int range = 10;
  bool constants_json = false;
  std::string constants_out;
  cmd_constants->add_option("--range", range, "largest m (<= 64)")
      ->capture_default_str();
  cmd_constants->add_flag("--json", constants_json, "machine-readable output");
  cmd_constants->add_option("--out", constants_out, "write the report here");

  // ---- class --------------------------------------------------------------
  auto* cmd_class = app.add_subcommand(
      "class", "print a universal class (ch, td, tdinv) or graded parts "
               "(s, tdpart, ct) with per-degree integrality");
  std::string which;
  int rank = 1, deg = 0;
  std::string scale = "none", variety, bundle;
  bool class_json = false;
  std::string class_out;
  cmd_class->add_option("which", which,
                        "one of: ch, td, tdinv, s, tdpart, ct")
      ->required();
  cmd_class->add_option("--rank", rank, "bundle rank (ch/td/tdinv)");
  cmd_class->add_option("--deg", deg, "truncation degree (ch/td/tdinv)");
  cmd_class->add_option("--scale", scale,
                        "none, factorial (deg!), or T (T_deg)")
      ->capture_default_str();
  cmd_class->add_option("--variety", variety,
                        "product model, e.g. pt, P2, P1xP1 (s/tdpart/ct)");
  cmd_class->add_option("--bundle", bundle,
                        "test class, e.g. \"O(1)\" or \"2O(1,0)-O(0,0)\" "
                        "(s/tdpart/ct; empty = O)");
  cmd_class->add_flag("--json", class_json, "machine-readable output");
  cmd_class->add_option("--out", class_out, "write the report here");

  // ---- verify -------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand(
      "verify", "run instance documents and report per-degree results");
  std::vector<std::string> files;
  bool verify_json = false, explore = false, timing = false;
  int jobs = 1;
  std::string verify_out;
  cmd_verify->add_option("files", files, "instance documents (JSON)");
  cmd_verify->add_flag("--json", verify_json, "machine-readable output");
  cmd_verify->add_flag("--explore", explore,
                       "probe the smallest integral level instead of "
                       "rejecting an l below the stated hypothesis");
  cmd_verify->add_option("--jobs", jobs, "worker threads")
      ->capture_default_str();
  cmd_verify->add_flag("--timing", timing,
                       "include wall-clock milliseconds (non-reproducible)");
  cmd_verify->add_option("--out", verify_out, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_constants->parsed()) {
      emit(igrr::constants_table(range, constants_json), constants_out);
      return kExitPass;
    }

    if (cmd_class->parsed()) {
      std::string text;
      if (which == "ch" || which == "td" || which == "tdinv") {
        text = igrr::universal_class_table(which, rank, deg, scale, class_json);
      } else if (which == "s" || which == "tdpart" || which == "ct") {
        if (variety.empty())
          throw igrr::SchemaError("class " + which + " needs --variety");
        text = igrr::parts_table(which, variety, bundle, class_json);
      } else {
        throw igrr::SchemaError("unsupported class \"" + which + "\"");
      }
      emit(text, class_out);
      return kExitPass;
    }

    // verify
    if (files.empty()) {
      const char* env = std::getenv("GRR_FIXTURES");
      files = fixture_files(env && *env ? env : IGRR_DEFAULT_FIXTURES);
    }
    igrr::VerifyOptions opt;
    opt.explore = explore;
    opt.jobs = jobs;
    opt.timing = timing;
    if (opt.jobs < 1)
      throw igrr::SchemaError("--jobs must be at least 1");
    std::vector<igrr::SuiteResult> runs;
    runs.reserve(files.size());
    for (const std::string& f : files)
      runs.push_back(igrr::run_suite(read_file(f), opt));
    emit(verify_json ? igrr::render_run_json(runs, timing)
                     : igrr::render_run_text(runs, timing),
         verify_out);
    return igrr::run_all_pass(runs) ? kExitPass : kExitFail;
  } catch (const igrr::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const igrr::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
