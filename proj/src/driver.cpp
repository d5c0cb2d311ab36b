#include "igrr/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "igrr/chow.hpp"
#include "igrr/grrcheck.hpp"
#include "igrr/ktheory.hpp"
#include "igrr/numbers.hpp"
#include "igrr/orbitcat.hpp"
#include "igrr/symring.hpp"

namespace igrr {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Strict JSON access

[[noreturn]] void schema_fail(const std::string& msg) { throw SchemaError(msg); }

void check_fields(const json& o, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!o.is_object()) schema_fail(where + " must be a JSON object");
  for (const auto& [k, v] : o.items()) {
    (void)v;
    if (!allowed.count(k)) schema_fail(where + ": unknown field \"" + k + "\"");
  }
}

const json& get_field(const json& o, const std::string& where,
                      const std::string& name) {
  const auto it = o.find(name);
  if (it == o.end()) schema_fail(where + ": missing field \"" + name + "\"");
  return *it;
}

int get_int(const json& v, const std::string& where) {
  if (!v.is_number_integer())
    schema_fail(where + " must be an integer");
  const long long x = v.get<long long>();
  if (x < -1000000 || x > 1000000) schema_fail(where + " is out of range");
  return static_cast<int>(x);
}

int get_int_field(const json& o, const std::string& where,
                  const std::string& name) {
  return get_int(get_field(o, where, name), where + "." + name);
}

std::string get_string_field(const json& o, const std::string& where,
                             const std::string& name) {
  const json& v = get_field(o, where, name);
  if (!v.is_string()) schema_fail(where + "." + name + " must be a string");
  return v.get<std::string>();
}

std::vector<int> get_int_array(const json& v, const std::string& where) {
  if (!v.is_array()) schema_fail(where + " must be an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out.push_back(get_int(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

// ---------------------------------------------------------------------------
// Document pieces

BundleData parse_class(const json& v, const std::string& where,
                       size_t want_twists) {
  if (!v.is_array()) schema_fail(where + " must be an array of terms");
  BundleData E;
  for (size_t i = 0; i < v.size(); ++i) {
    const std::string t = where + "[" + std::to_string(i) + "]";
    const json& term = v[i];
    check_fields(term, t, {"mult", "twists", "fiber"});
    const int mult = get_int_field(term, t, "mult");
    LineData L;
    L.twists = get_int_array(get_field(term, t, "twists"), t + ".twists");
    if (term.contains("fiber")) {
      L.fiber = get_int(term["fiber"], t + ".fiber");
      if (L.fiber != 0)
        schema_fail(t + ".fiber must be 0: instance sources are product "
                    "models without a fiber factor");
    }
    if (L.twists.size() != want_twists)
      schema_fail(t + ".twists must list exactly " +
                  std::to_string(want_twists) + " twist(s)");
    E.lines.emplace_back(mult, std::move(L));
  }
  return E;
}

struct ExpectRow {
  int degree = 0;
  std::string value;
};

std::vector<ExpectRow> parse_expect(const json& v, const std::string& where) {
  if (!v.is_array()) schema_fail(where + " must be an array");
  std::vector<ExpectRow> rows;
  for (size_t i = 0; i < v.size(); ++i) {
    const std::string t = where + "[" + std::to_string(i) + "]";
    check_fields(v[i], t, {"degree", "value"});
    rows.push_back(ExpectRow{get_int_field(v[i], t, "degree"),
                             get_string_field(v[i], t, "value")});
  }
  return rows;
}

std::set<std::string> parse_checks(const json& inst, const std::string& where,
                                   const std::set<std::string>& allowed,
                                   const std::string& fallback) {
  if (!inst.contains("checks")) return {fallback};
  const json& v = inst["checks"];
  if (!v.is_array()) schema_fail(where + ".checks must be an array");
  std::set<std::string> out;
  for (const auto& c : v) {
    if (!c.is_string()) schema_fail(where + ".checks entries must be strings");
    const std::string name = c.get<std::string>();
    if (!allowed.count(name))
      schema_fail(where + ".checks: unsupported check \"" + name + "\"");
    out.insert(name);
  }
  if (out.empty()) schema_fail(where + ".checks must not be empty");
  return out;
}

VarietyPtr parse_dims_model(const json& v, const std::string& where) {
  return Variety::projective_product(get_int_array(v, where));
}

// ---------------------------------------------------------------------------
// Check tasks

struct Task {
  std::string key;  // report key, unique per task
  std::function<VerificationReport()> run;
};

VerificationReport run_explore(const Instance& inst, const std::string& key) {
  VerificationReport rep;
  rep.key = key;
  rep.kind = "explore";
  const int bound = required_level(inst);
  rep.statement = "probe for the smallest level making both scaled sides "
                  "integral (requested l=" + std::to_string(inst.l) +
                  ", hypothesis bound " + std::to_string(bound) + ")";
  const MorphismData f = instance_morphism(inst);
  const KClass x = KClass::of_bundle(f.src, inst.x);
  const int best = smallest_integral_level(f, x, std::max(inst.l, bound));
  rep.pass = best >= 0;
  rep.rational_equal = true;
  rep.note = best >= 0
                 ? "smallest integral level: " + std::to_string(best)
                 : "no level up to " + std::to_string(std::max(inst.l, bound)) +
                       " makes both scaled sides integral";
  return rep;
}

VerificationReport run_expect(const Instance& inst, const std::string& key,
                              const std::vector<ExpectRow>& rows) {
  VerificationReport main = verify_instance(inst);
  VerificationReport rep;
  rep.key = key + "/expect";
  rep.kind = "expected_values";
  rep.statement = "frozen per-degree values of the scaled left side";
  bool all = true;
  for (const ExpectRow& row : rows) {
    DegreeLine line;
    line.degree = row.degree;
    line.rhs = row.value;
    bool found = false;
    for (const DegreeLine& d : main.degrees) {
      if (d.degree == row.degree) {
        line.lhs = d.lhs;
        found = true;
        break;
      }
    }
    if (!found)
      schema_fail(key + "/expect: degree " + std::to_string(row.degree) +
                  " is outside the report's degree range");
    line.equal = (line.lhs == line.rhs);
    all = all && line.equal;
    rep.degrees.push_back(std::move(line));
  }
  rep.rational_equal = all;
  rep.pass = all;
  if (!all) rep.note = "a frozen expected value diverged";
  return rep;
}

// Parses one GRR-kind instance and appends its check tasks.
void add_grr_tasks(const json& inst, const std::string& where,
                   Instance::Kind kind, const VerifyOptions& opt,
                   std::vector<Task>& tasks) {
  std::set<std::string> fields{"kind", "key", "checks", "expect", "l", "class"};
  Instance parsed;
  parsed.kind = kind;
  switch (kind) {
    case Instance::Kind::ZeroSection: {
      fields.insert({"base", "twists"});
      check_fields(inst, where, fields);
      parsed.base_dims =
          get_int_array(get_field(inst, where, "base"), where + ".base");
      const json& tw = get_field(inst, where, "twists");
      if (!tw.is_array()) schema_fail(where + ".twists must be an array");
      for (size_t i = 0; i < tw.size(); ++i)
        parsed.twists.push_back(get_int_array(
            tw[i], where + ".twists[" + std::to_string(i) + "]"));
      for (const auto& line : parsed.twists)
        if (line.size() != parsed.base_dims.size())
          schema_fail(where + ".twists lines must match the base factors");
      break;
    }
    case Instance::Kind::Projection:
      fields.insert({"base", "m"});
      check_fields(inst, where, fields);
      parsed.base_dims =
          get_int_array(get_field(inst, where, "base"), where + ".base");
      parsed.m = get_int_field(inst, where, "m");
      break;
    case Instance::Kind::LinearEmbedding:
      fields.insert({"k", "n"});
      check_fields(inst, where, fields);
      parsed.k = get_int_field(inst, where, "k");
      parsed.n = get_int_field(inst, where, "n");
      break;
    case Instance::Kind::Composed:
      fields.insert({"k", "n", "e"});
      check_fields(inst, where, fields);
      parsed.k = get_int_field(inst, where, "k");
      parsed.n = get_int_field(inst, where, "n");
      parsed.e = get_int_field(inst, where, "e");
      break;
  }
  parsed.l = get_int_field(inst, where, "l");

  size_t want = 0;
  switch (kind) {
    case Instance::Kind::ZeroSection:
      want = parsed.base_dims.size();
      break;
    case Instance::Kind::Projection:
      want = parsed.base_dims.size() + 1;
      break;
    case Instance::Kind::LinearEmbedding:
    case Instance::Kind::Composed:
      want = 1;
      break;
  }
  parsed.x = parse_class(get_field(inst, where, "class"), where + ".class", want);
  if (inst.contains("key"))
    parsed.key = get_string_field(inst, where, "key");
  const std::string key = parsed.key.empty() ? instance_key(parsed) : parsed.key;

  const std::set<std::string> checks = parse_checks(
      inst, where, {"grr", "graded", "pappas", "single_scale"}, "grr");
  std::vector<ExpectRow> expect;
  if (inst.contains("expect")) {
    expect = parse_expect(inst["expect"], where + ".expect");
    if (!checks.count("grr"))
      schema_fail(where + ": \"expect\" rows require the \"grr\" check");
  }

  const bool below = parsed.l < required_level(parsed);
  if (below && !opt.explore) {
    // Surface the library's own diagnostic for the usage exit code.
    (void)verify_instance(parsed);
    return;  // unreachable: verify_instance throws
  }
  if (below) {
    tasks.push_back({key + "/explore",
                     [parsed, key] { return run_explore(parsed, key); }});
    return;  // remaining checks presuppose the hypothesis
  }

  for (const std::string& check : checks) {
    if (check == "grr") {
      if (expect.empty()) {
        tasks.push_back({key, [parsed] { return verify_instance(parsed); }});
      } else {
        tasks.push_back({key, [parsed] { return verify_instance(parsed); }});
        tasks.push_back({key + "/expect", [parsed, key, expect] {
                           return run_expect(parsed, key, expect);
                         }});
      }
    } else if (check == "graded") {
      tasks.push_back({key + "/graded", [parsed, key] {
                         const VarietyPtr X = instance_source(parsed);
                         return verify_graded_parts(
                             X, KClass::of_bundle(X, parsed.x), parsed.l,
                             key + "/graded");
                       }});
    } else if (check == "pappas") {
      tasks.push_back({key + "/pappas", [parsed, key] {
                         const MorphismData f = instance_morphism(parsed);
                         return verify_pappas_graded(
                             f, KClass::of_bundle(f.src, parsed.x),
                             key + "/pappas");
                       }});
    } else {  // single_scale
      tasks.push_back({key + "/single-scale", [parsed, key] {
                         const MorphismData f = instance_morphism(parsed);
                         return verify_single_scale(
                             f, KClass::of_bundle(f.src, parsed.x), parsed.l,
                             key + "/single-scale");
                       }});
    }
  }
  if (opt.explore) {
    tasks.push_back({key + "/explore",
                     [parsed, key] { return run_explore(parsed, key); }});
  }
}

void add_phi_identity_tasks(const json& inst, const std::string& where,
                            std::vector<Task>& tasks) {
  check_fields(inst, where, {"kind", "key", "checks", "n", "l"});
  const int n = get_int_field(inst, where, "n");
  const int l = get_int_field(inst, where, "l");
  std::string key = inst.contains("key")
                        ? get_string_field(inst, where, "key")
                        : "phi_identity P" + std::to_string(n) +
                              " l=" + std::to_string(l);
  const std::set<std::string> checks =
      parse_checks(inst, where, {"identity", "denominators"}, "identity");
  if (checks.count("identity"))
    tasks.push_back({key, [n, l, key] { return verify_phi_identity(n, l, key); }});
  if (checks.count("denominators"))
    tasks.push_back({key + "/denominators", [n, l, key] {
                       return verify_phi_denominators(diagonal_k_class(n), l,
                                                      key + "/denominators");
                     }});
}

void add_phi_functoriality_tasks(const json& inst, const std::string& where,
                                 std::vector<Task>& tasks) {
  check_fields(inst, where,
               {"kind", "key", "checks", "x", "y", "z", "a", "b", "l"});
  const VarietyPtr X = parse_dims_model(get_field(inst, where, "x"), where + ".x");
  const VarietyPtr Y = parse_dims_model(get_field(inst, where, "y"), where + ".y");
  const VarietyPtr Z = parse_dims_model(get_field(inst, where, "z"), where + ".z");
  const int l = get_int_field(inst, where, "l");
  const BundleData ea =
      parse_class(get_field(inst, where, "a"), where + ".a",
                  X->factor_count() + Y->factor_count());
  const BundleData eb =
      parse_class(get_field(inst, where, "b"), where + ".b",
                  Y->factor_count() + Z->factor_count());
  const KMCorrespondence a =
      make_km(X, Y, KClass::of_bundle(product_model(X, Y), ea));
  const KMCorrespondence b =
      make_km(Y, Z, KClass::of_bundle(product_model(Y, Z), eb));
  std::string key = inst.contains("key")
                        ? get_string_field(inst, where, "key")
                        : "phi_functoriality " + X->describe() + "->" +
                              Y->describe() + "->" + Z->describe() +
                              " a=" + bundle_desc(ea) + " b=" + bundle_desc(eb) +
                              " l=" + std::to_string(l);
  const std::set<std::string> checks = parse_checks(
      inst, where, {"functoriality", "denominators"}, "functoriality");
  if (checks.count("functoriality"))
    tasks.push_back({key, [a, b, l, key] {
                       return verify_phi_functoriality(a, b, l, key);
                     }});
  if (checks.count("denominators")) {
    tasks.push_back({key + "/den-a", [a, l, key] {
                       return verify_phi_denominators(a, l, key + "/den-a");
                     }});
    tasks.push_back({key + "/den-b", [b, l, key] {
                       return verify_phi_denominators(b, l, key + "/den-b");
                     }});
    tasks.push_back({key + "/den-ab", [a, b, l, key] {
                       return verify_phi_denominators(compose_km(a, b), l,
                                                      key + "/den-ab");
                     }});
  }
}

// ---------------------------------------------------------------------------
// Suite execution

struct TaskOutcome {
  VerificationReport report;
  long long ms = 0;
  std::exception_ptr error;
};

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

SuiteResult run_suite(const std::string& json_text, const VerifyOptions& opt) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    schema_fail(std::string("invalid JSON: ") + e.what());
  }
  check_fields(doc, "document", {"suite", "instances"});
  SuiteResult result;
  result.suite = get_string_field(doc, "document", "suite");
  const json& instances = get_field(doc, "document", "instances");
  if (!instances.is_array()) schema_fail("document.instances must be an array");

  std::vector<Task> tasks;
  for (size_t i = 0; i < instances.size(); ++i) {
    const std::string where = "instances[" + std::to_string(i) + "]";
    const json& inst = instances[i];
    if (!inst.is_object()) schema_fail(where + " must be an object");
    const std::string kind = get_string_field(inst, where, "kind");
    if (kind == "zero_section")
      add_grr_tasks(inst, where, Instance::Kind::ZeroSection, opt, tasks);
    else if (kind == "projection")
      add_grr_tasks(inst, where, Instance::Kind::Projection, opt, tasks);
    else if (kind == "linear_embedding")
      add_grr_tasks(inst, where, Instance::Kind::LinearEmbedding, opt, tasks);
    else if (kind == "composed")
      add_grr_tasks(inst, where, Instance::Kind::Composed, opt, tasks);
    else if (kind == "phi_identity")
      add_phi_identity_tasks(inst, where, tasks);
    else if (kind == "phi_functoriality")
      add_phi_functoriality_tasks(inst, where, tasks);
    else
      schema_fail(where + ": unsupported kind \"" + kind + "\"");
  }

  std::set<std::string> seen;
  for (const Task& t : tasks)
    if (!seen.insert(t.key).second)
      schema_fail("duplicate report key \"" + t.key +
                  "\": give the instances distinct \"key\" fields");

  std::vector<TaskOutcome> outcomes(tasks.size());
  const int jobs = std::max(
      1, std::min<int>(opt.jobs, static_cast<int>(tasks.size() ? tasks.size() : 1)));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      const auto start = std::chrono::steady_clock::now();
      try {
        outcomes[i].report = tasks[i].run();
      } catch (...) {
        outcomes[i].error = std::current_exception();
      }
      outcomes[i].ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const TaskOutcome& o : outcomes)
    if (o.error) std::rethrow_exception(o.error);

  std::vector<size_t> order(outcomes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return outcomes[a].report.key < outcomes[b].report.key;
  });
  for (size_t i : order) {
    result.reports.push_back(std::move(outcomes[i].report));
    result.elapsed_ms.push_back(outcomes[i].ms);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Rendering

std::string limitation_header() {
  return "all supported models have torsion-free Chow groups; torsion "
         "phenomena over general fields are not exercised. verified content: "
         "(i) integrality of every scaled class, (ii) the scaled identities "
         "with their exact integer constants.";
}

bool run_all_pass(const std::vector<SuiteResult>& runs) {
  for (const auto& r : runs)
    if (!r.all_pass()) return false;
  return true;
}

namespace {

const char* yesno(bool b) { return b ? "yes" : "no"; }

void render_degree_lines(std::ostringstream& os, const VerificationReport& r) {
  for (const DegreeLine& d : r.degrees) {
    os << "  degree " << d.degree << ": lhs=" << d.lhs << "  rhs=" << d.rhs
       << "  equal=" << yesno(d.equal) << "  integral=" << yesno(d.lhs_integral)
       << "/" << yesno(d.rhs_integral) << "\n";
  }
}

}  // namespace

std::string render_run_text(const std::vector<SuiteResult>& runs, bool timing) {
  std::ostringstream os;
  os << "# limitation: " << limitation_header() << "\n";
  size_t total = 0, passed = 0;
  for (const SuiteResult& run : runs) {
    os << "suite: " << run.suite << "\n";
    for (size_t i = 0; i < run.reports.size(); ++i) {
      const VerificationReport& r = run.reports[i];
      ++total;
      if (r.pass) ++passed;
      os << (r.pass ? "PASS" : "FAIL") << "  [" << r.kind << "] " << r.key;
      if (timing) os << "  (" << run.elapsed_ms[i] << " ms)";
      os << "\n";
      if (!r.note.empty()) os << "  note: " << r.note << "\n";
      if (!r.pass) render_degree_lines(os, r);
    }
  }
  os << "summary: " << total << " checks, " << passed << " passed, "
     << (total - passed) << " failed\n";
  return os.str();
}

std::string render_run_json(const std::vector<SuiteResult>& runs, bool timing) {
  json top;
  top["limitation"] = limitation_header();
  top["pass"] = run_all_pass(runs);
  json suites = json::array();
  for (const SuiteResult& run : runs) {
    json s;
    s["suite"] = run.suite;
    s["pass"] = run.all_pass();
    json results = json::array();
    for (size_t i = 0; i < run.reports.size(); ++i) {
      const VerificationReport& r = run.reports[i];
      json e;
      e["key"] = r.key;
      e["kind"] = r.kind;
      e["statement"] = r.statement;
      e["pass"] = r.pass;
      e["rational_equal"] = r.rational_equal;
      e["lhs_integral"] = r.lhs_integral;
      e["rhs_integral"] = r.rhs_integral;
      if (!r.note.empty()) e["note"] = r.note;
      json degrees = json::array();
      for (const DegreeLine& d : r.degrees) {
        json dl;
        dl["degree"] = std::to_string(d.degree);
        dl["lhs"] = d.lhs;
        dl["rhs"] = d.rhs;
        dl["equal"] = d.equal;
        dl["lhs_integral"] = d.lhs_integral;
        dl["rhs_integral"] = d.rhs_integral;
        degrees.push_back(std::move(dl));
      }
      e["degrees"] = std::move(degrees);
      if (timing) e["elapsed_ms"] = std::to_string(run.elapsed_ms[i]);
      results.push_back(std::move(e));
    }
    s["results"] = std::move(results);
    suites.push_back(std::move(s));
  }
  top["suites"] = std::move(suites);
  return top.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// constants / class subcommands

namespace {

std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.resize(c + 1, 0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) os << "  ";
      os << row[c];
      if (c + 1 < row.size())
        os << std::string(width[c] - row[c].size(), ' ');
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string constants_table(int range, bool json_out) {
  if (range < 0 || range > 64)
    schema_fail("constants range must be between 0 and 64");
  if (json_out) {
    json rows = json::array();
    for (int m = 0; m <= range; ++m) {
      const Int f = factorial(static_cast<unsigned>(m));
      const Int t = todd_scale(static_cast<unsigned>(m));
      json row;
      row["m"] = std::to_string(m);
      row["factorial"] = to_string(f);
      row["T"] = to_string(t);
      row["T_over_factorial"] = to_string(Int(t / f));
      row["B"] = to_string(bernoulli(static_cast<unsigned>(m)));
      rows.push_back(std::move(row));
    }
    json top;
    top["rows"] = std::move(rows);
    return top.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"m", "m!", "T_m", "T_m/m!", "B_m"});
  for (int m = 0; m <= range; ++m) {
    const Int f = factorial(static_cast<unsigned>(m));
    const Int t = todd_scale(static_cast<unsigned>(m));
    rows.push_back({std::to_string(m), to_string(f), to_string(t),
                    to_string(Int(t / f)),
                    to_string(bernoulli(static_cast<unsigned>(m)))});
  }
  return render_columns(rows);
}

std::string universal_class_table(const std::string& which, int rank, int deg,
                                  const std::string& scale, bool json_out) {
  Poly cls;
  if (which == "ch")
    cls = chern_character(rank, deg);
  else if (which == "td")
    cls = todd_class(rank, deg);
  else if (which == "tdinv")
    cls = todd_inverse(rank, deg);
  else
    schema_fail("unsupported universal class \"" + which +
                "\" (expected ch, td or tdinv)");
  Rat factor(1);
  std::string scale_desc = "1";
  if (scale == "factorial") {
    factor = Rat(factorial(static_cast<unsigned>(deg)));
    scale_desc = std::to_string(deg) + "! = " + to_string(numerator(factor));
  } else if (scale == "T") {
    factor = Rat(todd_scale(static_cast<unsigned>(deg)));
    scale_desc = "T_" + std::to_string(deg) + " = " + to_string(numerator(factor));
  } else if (scale != "none") {
    schema_fail("unsupported scale \"" + scale +
                "\" (expected none, factorial or T)");
  }
  const Poly scaled = cls * factor;
  if (json_out) {
    json top;
    top["class"] = scaled.str();
    top["scale"] = scale_desc;
    json degrees = json::array();
    for (int d = 0; d <= deg; ++d) {
      const Poly part = scaled.component(d);
      json row;
      row["degree"] = std::to_string(d);
      row["part"] = part.str();
      row["integral"] = part.is_integral();
      degrees.push_back(std::move(row));
    }
    top["degrees"] = std::move(degrees);
    return top.dump(2) + "\n";
  }
  std::ostringstream os;
  os << scaled.str() << "\n";
  os << "scale: " << scale_desc << "\n";
  for (int d = 0; d <= deg; ++d) {
    const Poly part = scaled.component(d);
    os << "degree " << d << ": " << part.str() << " ["
       << (part.is_integral() ? "integral" : "non-integral") << "]\n";
  }
  return os.str();
}

namespace {

VarietyPtr parse_variety_name(const std::string& name) {
  if (name == "pt") return Variety::point();
  std::vector<int> dims;
  size_t pos = 0;
  while (pos < name.size()) {
    if (name[pos] != 'P')
      schema_fail("unsupported variety \"" + name +
                  "\" (expected pt or P<n>[xP<m>...])");
    ++pos;
    size_t end = pos;
    while (end < name.size() && std::isdigit(static_cast<unsigned char>(name[end])))
      ++end;
    if (end == pos) schema_fail("unsupported variety \"" + name + "\"");
    dims.push_back(std::stoi(name.substr(pos, end - pos)));
    pos = end;
    if (pos < name.size()) {
      if (name[pos] != 'x') schema_fail("unsupported variety \"" + name + "\"");
      ++pos;
      if (pos == name.size()) schema_fail("unsupported variety \"" + name + "\"");
    }
  }
  if (dims.empty()) schema_fail("unsupported variety \"" + name + "\"");
  return Variety::projective_product(dims);
}

// Signed terms "[k][·|*]O(t1,...)": "O(1)", "2O(1,0)-O(0,0)", "-3·O(2)",
// "2*O(1)".
BundleData parse_bundle_name(const std::string& text, size_t want_twists) {
  BundleData E;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_ws();
  if (pos == text.size()) {  // empty: the structure sheaf
    E.lines.emplace_back(1, LineData{std::vector<int>(want_twists, 0), 0});
    return E;
  }
  bool first = true;
  while (pos < text.size()) {
    skip_ws();
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      schema_fail("bundle terms must be joined by + or - in \"" + text + "\"");
    }
    first = false;
    skip_ws();
    int mult = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t end = pos;
      while (end < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[end])))
        ++end;
      mult = std::stoi(text.substr(pos, end - pos));
      pos = end;
      if (pos < text.size() && text.compare(pos, 2, "·") == 0)
        pos += 2;
      else if (pos < text.size() && text[pos] == '*')
        ++pos;
    }
    skip_ws();
    if (pos >= text.size() || text[pos] != 'O')
      schema_fail("expected a line-bundle term O(...) in \"" + text + "\"");
    ++pos;
    if (pos >= text.size() || text[pos] != '(')
      schema_fail("expected '(' after O in \"" + text + "\"");
    ++pos;
    std::vector<int> twists;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      size_t end = pos;
      if (end < text.size() && (text[end] == '-' || text[end] == '+')) ++end;
      while (end < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[end])))
        ++end;
      if (end == pos ||
          (end == pos + 1 && !std::isdigit(static_cast<unsigned char>(text[pos]))))
        schema_fail("expected an integer twist in \"" + text + "\"");
      twists.push_back(std::stoi(text.substr(pos, end - pos)));
      pos = end;
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        skip_ws();
      }
    }
    if (pos >= text.size()) schema_fail("missing ')' in \"" + text + "\"");
    ++pos;  // ')'
    if (twists.size() != want_twists)
      schema_fail("bundle term must list exactly " +
                  std::to_string(want_twists) + " twist(s) in \"" + text + "\"");
    E.lines.emplace_back(sign * mult, LineData{std::move(twists), 0});
    skip_ws();
  }
  return E;
}

}  // namespace

std::string parts_table(const std::string& which, const std::string& variety,
                        const std::string& bundle, bool json_out) {
  std::string label;
  if (which == "s")
    label = "S";
  else if (which == "tdpart")
    label = "TD";
  else if (which == "ct")
    label = "CT";
  else
    schema_fail("unsupported graded part \"" + which +
                "\" (expected s, tdpart or ct)");
  const VarietyPtr X = parse_variety_name(variety);
  const BundleData E = parse_bundle_name(bundle, X->factor_count());
  const GradedParts parts = graded_parts(X, KClass::of_bundle(X, E));
  const std::vector<ChowClass>& rows =
      which == "s" ? parts.s : (which == "tdpart" ? parts.td : parts.ct);
  if (json_out) {
    json top;
    top["variety"] = X->describe();
    top["bundle"] = bundle_desc(E);
    json out = json::array();
    for (size_t m = 0; m < rows.size(); ++m) {
      json row;
      row["degree"] = std::to_string(m);
      row["part"] = rows[m].str();
      row["integral"] = rows[m].is_integral();
      out.push_back(std::move(row));
    }
    top["parts"] = std::move(out);
    return top.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "variety: " << X->describe() << "  bundle: " << bundle_desc(E) << "\n";
  for (size_t m = 0; m < rows.size(); ++m) {
    os << label << "_" << m << ": " << rows[m].str() << " ["
       << (rows[m].is_integral() ? "integral" : "non-integral") << "]\n";
  }
  return os.str();
}

}  // namespace igrr
