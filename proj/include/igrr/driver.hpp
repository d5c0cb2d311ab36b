#pragma once

// Instance-file ingestion, suite execution, and deterministic report
// rendering, shared by the command-line tool and the acceptance checks.
//
// Instance documents are JSON:
//   { "suite": "name", "instances": [ { "kind": ..., ... }, ... ] }
// with kinds zero_section {base, twists, l, class}, projection {base, m, l,
// class}, linear_embedding {k, n, l, class}, composed {k, n, e, l, class},
// phi_identity {n, l}, phi_functoriality {x, y, z, a, b, l}.  Classes are
// arrays of {"mult": int, "twists": [int...]} terms (an optional "fiber"
// must be 0: every admissible source here is a product model).  Optional
// per-instance fields: "key" (report key), "checks" (subset of the checks
// listed below), "expect" ([{degree, value}] rows frozen against the main
// check's scaled left side).  Unknown fields anywhere are rejected.

#include <stdexcept>
#include <string>
#include <vector>

#include "igrr/report.hpp"

namespace igrr {

// Malformed document: bad JSON, unknown field, missing or ill-typed entry,
// unsupported kind or check name.  Mapped to the usage exit code.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyOptions {
  // Probe the smallest level with both scaled sides integral instead of
  // rejecting an l below the stated hypothesis (and additionally report the
  // probe for conforming instances).
  bool explore = false;
  int jobs = 1;        // worker threads for check execution
  bool timing = false; // measure wall-clock per check (opt-in: timings make
                       // the rendered output non-reproducible)
};

struct SuiteResult {
  std::string suite;
  std::vector<VerificationReport> reports;  // sorted by key
  std::vector<long long> elapsed_ms;        // parallel to reports
  bool all_pass() const;
};

// Parses one JSON document and runs every requested check.
SuiteResult run_suite(const std::string& json_text, const VerifyOptions& opt);

// Scope note placed at the head of every verification report.
std::string limitation_header();

// Renderers.  Identical inputs produce byte-identical output; timings are
// included only when `timing` is set.
std::string render_run_text(const std::vector<SuiteResult>& runs, bool timing);
std::string render_run_json(const std::vector<SuiteResult>& runs, bool timing);
bool run_all_pass(const std::vector<SuiteResult>& runs);

// `constants`: rows m, m!, T_m, T_m/m!, B_m for m = 0..range (range <= 64).
std::string constants_table(int range, bool json);

// `class ch|td|tdinv`: universal class of a rank-`rank` bundle truncated at
// degree `deg`, scaled by 1 ("none"), deg! ("factorial") or T_deg ("T"),
// with a per-degree integrality annotation.
std::string universal_class_table(const std::string& which, int rank, int deg,
                                  const std::string& scale, bool json);

// `class s|tdpart|ct`: graded integral parts on a product model.
// Variety grammar: "pt" or "P<n>" joined by "x" (e.g. "P1xP2").
// Bundle grammar: signed terms "[k]O(t1,...)" (e.g. "O(1)", "2O(1,0)-O(0,0)");
// empty string means the structure sheaf.
std::string parts_table(const std::string& which, const std::string& variety,
                        const std::string& bundle, bool json);

}  // namespace igrr
