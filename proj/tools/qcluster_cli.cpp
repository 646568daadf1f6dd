// Command-line front end.  Talks to the core exclusively through the C API
// (qcluster.h); every subcommand is a thin reader/renderer around one call.
//
// Exit codes: 0 all requested checks passed; 1 a check failed honestly;
// 2 usage error; 3 broken input data or an API-level failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcluster.h"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

bool g_raw_json = false;

// Move-only owner of a resource returned by the C API.
template <typename T, void (*Free)(T*)>
struct Owned {
  T* p = nullptr;
  Owned() = default;
  Owned(Owned&& o) noexcept : p(o.p) { o.p = nullptr; }
  Owned& operator=(Owned&& o) noexcept {
    if (this != &o) {
      Free(p);
      p = o.p;
      o.p = nullptr;
    }
    return *this;
  }
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { Free(p); }
};

struct ApiString : Owned<char, qcl_string_free> {
  std::string str() const { return p ? std::string(p) : std::string(); }
};

using SeedHandle = Owned<qcl_seed, qcl_seed_free>;
using AcsHandle = Owned<qcl_acs, qcl_acs_free>;

// API-level failure: bad data, unknown labels, unsupported branch.
[[noreturn]] void die_api(int status) {
  std::cerr << "error (" << status << "): " << qcl_last_error() << "\n";
  std::exit(kExitData);
}

void api(int status) {
  if (status != QCL_OK) die_api(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    std::exit(kExitData);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(kExitData);
  }
  out << text;
}

json parse_report(const ApiString& s) { return json::parse(s.str()); }

// Renders the machine report when --json is set; returns true if it did.
bool raw(const ApiString& report) {
  if (g_raw_json) std::cout << report.str() << "\n";
  return g_raw_json;
}

int exit_for(bool pass) { return pass ? kExitPass : kExitCheckFailed; }

void print_violations(const json& violations) {
  for (const auto& v : violations) {
    std::cout << "  " << v.value("rule", "");
    if (v.contains("where")) std::cout << " at " << v["where"].get<std::string>();
    std::cout << ": " << v.value("detail", "") << "\n";
  }
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("QCLUSTER_JOBS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

SeedHandle load_seed(const std::string& path) {
  SeedHandle seed;
  api(qcl_seed_parse(read_file(path).c_str(), &seed.p));
  return seed;
}

AcsHandle load_acs(const std::string& path) {
  AcsHandle acs;
  api(qcl_acs_parse(read_file(path).c_str(), &acs.p));
  return acs;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_file(out_path, text + "\n");
}

/* ---- subcommand bodies -------------------------------------------------- */

int run_seed_validate(const std::string& file) {
  SeedHandle seed = load_seed(file);
  ApiString report;
  api(qcl_seed_validate(seed.p, &report.p));
  json r = parse_report(report);
  bool valid = r.value("valid", false);
  if (raw(report)) return exit_for(valid);
  if (valid) {
    std::cout << "valid\n";
  } else {
    std::cout << "invalid:\n";
    print_violations(r["violations"]);
  }
  return exit_for(valid);
}

int run_seed_mutate(const std::string& file, const std::string& direction,
                    bool trace) {
  SeedHandle seed = load_seed(file);
  ApiString report;
  api(qcl_seed_mutate(seed.p, direction.c_str(), trace ? 1 : 0, &report.p));
  std::cout << report.str() << "\n";
  return kExitPass;
}

int run_explore(const std::string& file, std::size_t depth, bool fold,
                const std::string& dot_path, const std::string& vars_path,
                std::size_t jobs) {
  SeedHandle seed = load_seed(file);
  json options{{"depth", depth}, {"fold", fold}, {"jobs", jobs}};
  ApiString report, dot, vars;
  api(qcl_explore(seed.p, options.dump().c_str(), &report.p,
                  dot_path.empty() ? nullptr : &dot.p,
                  vars_path.empty() ? nullptr : &vars.p));
  if (!dot_path.empty()) write_file(dot_path, dot.str());
  if (!vars_path.empty()) write_file(vars_path, vars.str());
  json r = parse_report(report);
  bool ok = r["failures"].empty();
  if (raw(report)) return exit_for(ok);
  std::size_t nodes = r.value("nodes", 0);
  bool closed = r.value("closed", false);
  if (fold)
    std::cout << (closed ? "closed, " : "open, ") << nodes << " clusters\n";
  else
    std::cout << (closed ? "closed tree, " : "open tree, ") << nodes
              << " nodes at depth " << depth << "\n";
  std::cout << "nodes: " << nodes << "\n";
  std::cout << "edges: " << r.value("edges", 0) << "\n";
  if (!ok) {
    std::cout << "laurent failures:\n";
    for (const auto& f : r["failures"])
      std::cout << "  " << f.value("path", "") << " direction "
                << f.value("direction", "") << ": " << f.value("message", "")
                << "\n";
  }
  return exit_for(ok);
}

int run_verify(const std::string& suite, const std::string& file,
               std::size_t depth, std::size_t rand_count,
               std::uint64_t rng_seed, std::size_t rank, int max_entry,
               bool quantum, std::size_t jobs) {
  SeedHandle seed;
  if (!file.empty()) seed = load_seed(file);
  json options{{"depth", depth}, {"rand", rand_count},
               {"rng_seed", rng_seed}, {"rank", rank},
               {"max_entry", max_entry}, {"quantum", quantum},
               {"jobs", jobs}};
  ApiString report;
  api(qcl_verify(seed.p, suite.c_str(), options.dump().c_str(), &report.p));
  json r = parse_report(report);
  bool pass = r.value("pass", false);
  if (raw(report)) return exit_for(pass);
  for (const auto& run : r["runs"]) {
    std::cout << suite << " " << run.value("seed", "") << ": "
              << (run.value("pass", false) ? "pass" : "FAIL") << "\n";
    if (!run.value("pass", false))
      for (const auto& d : run["details"])
        std::cout << "  " << d.get<std::string>() << "\n";
  }
  std::cout << (pass ? "pass" : "FAIL") << "\n";
  return exit_for(pass);
}

int run_acs_extract(const std::string& file, std::size_t depth,
                    const std::string& out_path) {
  SeedHandle seed = load_seed(file);
  AcsHandle acs;
  api(qcl_acs_from_seed(seed.p, depth, &acs.p));
  ApiString text;
  api(qcl_acs_to_json(acs.p, &text.p));
  emit(text.str(), out_path);
  return kExitPass;
}

int run_acs_check(const std::string& file) {
  AcsHandle acs = load_acs(file);
  ApiString report;
  api(qcl_acs_check(acs.p, &report.p));
  json r = parse_report(report);
  bool pass = r.value("pass", false);
  if (raw(report)) return exit_for(pass);
  const json& cls = r["classification"];
  std::cout << "vertices: " << r.value("vertices", 0)
            << ", edges: " << r.value("edges", 0) << "\n";
  std::cout << "rank: " << cls.value("total_rank", 0) << " total, "
            << cls.value("mutable_rank", 0) << " mutable, "
            << cls.value("frozen_rank", 0) << " frozen\n";
  std::cout << "quantum: " << (r.value("quantum", false) ? "yes" : "no")
            << "\n";
  if (pass) {
    std::cout << "pass\n";
  } else {
    std::cout << "violations:\n";
    print_violations(r["violations"]);
  }
  return exit_for(pass);
}

int run_acs_principal(const std::string& file, const std::string& out_path) {
  AcsHandle acs = load_acs(file);
  AcsHandle principal;
  api(qcl_acs_principal(acs.p, &principal.p));
  ApiString text;
  api(qcl_acs_to_json(principal.p, &text.p));
  emit(text.str(), out_path);
  return kExitPass;
}

int run_acs_to_seed(const std::string& file, const std::string& vertex,
                    const std::string& out_path) {
  AcsHandle acs = load_acs(file);
  ApiString text;
  api(qcl_acs_to_seed(acs.p, vertex.c_str(), &text.p));
  emit(text.str(), out_path);
  return kExitPass;
}

int run_cat_check_morphism(const std::string& file) {
  ApiString report;
  api(qcl_cat_check_morphism(read_file(file).c_str(), &report.p));
  json r = parse_report(report);
  bool pass = r.value("pass", false);
  if (raw(report)) return exit_for(pass);
  if (pass) {
    std::cout << "pass\n";
    std::cout << "isomorphism: " << (r.value("isomorphism", false) ? "yes" : "no")
              << "\n";
  } else {
    std::cout << "violations:\n";
    print_violations(r["violations"]);
  }
  return exit_for(pass);
}

int run_cat_product(bool coproduct, const std::string& a_file,
                    const std::string& b_file, const std::string& out_path) {
  std::string a = read_file(a_file), b = read_file(b_file);
  ApiString report;
  api(coproduct ? qcl_cat_coproduct(a.c_str(), b.c_str(), &report.p)
                : qcl_cat_product(a.c_str(), b.c_str(), &report.p));
  json r = parse_report(report);
  bool pass = r.value("pass", false);
  if (!out_path.empty()) write_file(out_path, r["object"].dump(2) + "\n");
  if (raw(report)) return exit_for(pass);
  std::cout << (coproduct ? "coproduct" : "product") << ": "
            << (pass ? "pass" : "FAIL") << "\n";
  std::cout << "object vertices: " << r["object"]["vertices"].size() << "\n";
  std::cout << "mediator is identity: "
            << (r.value("mediator_identity", false) ? "yes" : "no") << "\n";
  return exit_for(pass);
}

int run_surface_enumerate(int n, bool list) {
  ApiString report;
  api(qcl_surface_enumerate(n, &report.p));
  json r = parse_report(report);
  if (raw(report)) return kExitPass;
  std::cout << "n: " << n << "\n";
  std::cout << "count: " << r.value("count", 0) << "\n";
  if (list)
    for (const auto& t : r["triangulations"])
      std::cout << t.get<std::string>() << "\n";
  return kExitPass;
}

int run_surface_acs(int n, const std::string& out_path) {
  AcsHandle acs;
  api(qcl_surface_acs(n, &acs.p));
  ApiString text;
  api(qcl_acs_to_json(acs.p, &text.p));
  emit(text.str(), out_path);
  return kExitPass;
}

int run_surface_hexagon() {
  ApiString report;
  api(qcl_surface_hexagon_gr26(&report.p));
  json r = parse_report(report);
  bool pass = r.value("pass", false);
  if (raw(report)) return exit_for(pass);
  if (pass) {
    std::cout << "isomorphism verified: " << r.value("vertices", 0)
              << " vertices, " << r.value("edges", 0) << " edges\n";
  } else {
    std::cout << "FAIL\n";
    print_violations(r["surface_violations"]);
    print_violations(r["cluster_violations"]);
    print_violations(r["morphism"]["violations"]);
  }
  return exit_for(pass);
}

int run_rcm_push(const std::string& file, const std::string& sequence) {
  ApiString report;
  api(qcl_rcm_push(read_file(file).c_str(), sequence.c_str(), &report.p));
  json r = parse_report(report);
  if (raw(report)) return kExitPass;
  std::cout << "F(seq):";
  for (const auto& l : r["f_seq"]) std::cout << " " << l.get<std::string>();
  std::cout << "\n" << r["phi_pushed"].dump(2) << "\n";
  return kExitPass;
}

int run_rcm_sign(const std::string& file) {
  ApiString report;
  api(qcl_rcm_sign(read_file(file).c_str(), &report.p));
  json r = parse_report(report);
  if (raw(report)) return kExitPass;
  std::cout << "verdict: " << r.value("verdict", "") << "\n";
  for (const auto& c : r["components"]) {
    std::cout << "  component [";
    bool first = true;
    for (const auto& m : c["members"]) {
      if (!first) std::cout << ", ";
      std::cout << m.get<std::string>();
      first = false;
    }
    std::cout << "] sign " << c.value("sign", "") << "\n";
  }
  return kExitPass;
}

int run_rcm_induce(const std::string& file, std::size_t depth) {
  ApiString report;
  api(qcl_rcm_induce(read_file(file).c_str(), depth, &report.p));
  json r = parse_report(report);
  bool pass = r.value("pass", false);
  if (raw(report)) return exit_for(pass);
  std::cout << "induced morphism on depth-" << depth << " truncations: "
            << (pass ? "pass" : "FAIL") << "\n";
  std::cout << "src vertices: " << r.value("src_vertices", 0)
            << ", dst vertices: " << r.value("dst_vertices", 0) << "\n";
  if (!pass) print_violations(r["violations"]);
  return exit_for(pass);
}

int run_rcm_verify_vars(const std::string& file, std::size_t depth) {
  ApiString report;
  api(qcl_rcm_verify_vars(read_file(file).c_str(), depth, &report.p));
  json r = parse_report(report);
  bool pass = r.value("pass", false);
  if (raw(report)) return exit_for(pass);
  std::cout << "checked: " << r.value("checked", 0) << " variable pairs to depth "
            << depth << "\n";
  if (pass) {
    std::cout << "pass\n";
  } else {
    std::cout << "failures:\n";
    for (const auto& f : r["failures"])
      std::cout << "  at " << f.value("path", "") << " label "
                << f.value("label", "") << ": " << f.value("detail", "")
                << "\n";
  }
  return exit_for(pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cluster-algebra toolkit"};
  app.require_subcommand(1);
  // Let global flags appear after the subcommand as well (inherited).
  app.fallthrough();
  app.add_flag("--json", g_raw_json, "print machine-readable JSON reports");
  std::size_t jobs = default_jobs();
  app.add_option("--jobs", jobs, "worker threads for exploration/verification");

  // seed
  auto* seed_cmd = app.add_subcommand("seed", "seed inspection and mutation");
  seed_cmd->require_subcommand(1);
  std::string sv_file;
  auto* seed_validate = seed_cmd->add_subcommand("validate", "check seed axioms");
  seed_validate->add_option("file", sv_file, "seed JSON")->required();
  std::string sm_file, sm_dir;
  bool sm_trace = false;
  auto* seed_mutate = seed_cmd->add_subcommand("mutate", "mutate one direction");
  seed_mutate->add_option("file", sm_file, "seed JSON")->required();
  seed_mutate->add_option("-k,--direction", sm_dir, "exchangeable label")
      ->required();
  seed_mutate->add_flag("--trace", sm_trace, "include the tropical maps");

  // explore
  std::string ex_file, ex_dot, ex_vars;
  std::size_t ex_depth = 6;
  bool ex_fold = false;
  auto* explore_cmd = app.add_subcommand("explore", "walk the exchange tree");
  explore_cmd->add_option("file", ex_file, "seed JSON")->required();
  explore_cmd->add_option("--depth", ex_depth, "maximum mutation depth");
  explore_cmd->add_flag("--fold", ex_fold, "fold equal clusters into a graph");
  explore_cmd->add_option("--dot", ex_dot, "write Graphviz output here");
  explore_cmd->add_option("--vars", ex_vars, "write cluster variables here");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "property suites");
  verify_cmd->require_subcommand(1);
  struct VerifyArgs {
    std::string file;
    std::size_t depth = 6;
    std::size_t rand_count = 0;
    std::uint64_t rng_seed = 0;
    std::size_t rank = 3;
    int max_entry = 3;
    bool quantum = false;
  };
  std::map<std::string, VerifyArgs> verify_args;
  for (const std::string suite :
       {"laurent", "involution", "signs", "compat"}) {
    auto* sub = verify_cmd->add_subcommand(suite, suite + " suite");
    VerifyArgs& a = verify_args[suite];
    sub->add_option("file", a.file, "seed JSON (optional with --rand)");
    sub->add_option("--depth", a.depth, "mutation depth");
    sub->add_option("--rand", a.rand_count, "random seeds to add");
    sub->add_option("--rng-seed", a.rng_seed, "base RNG seed");
    sub->add_option("--rank", a.rank, "mutable rank of random seeds");
    sub->add_option("--max-entry", a.max_entry, "max |entry| of random beta");
    sub->add_flag("--quantum", a.quantum, "random seeds carry lambda");
  }

  // acs
  auto* acs_cmd = app.add_subcommand("acs", "abstract cluster structures");
  acs_cmd->require_subcommand(1);
  std::string ae_file, ae_out;
  std::size_t ae_depth = 3;
  auto* acs_extract = acs_cmd->add_subcommand("extract", "truncate a seed's tree");
  acs_extract->add_option("file", ae_file, "seed JSON")->required();
  acs_extract->add_option("--depth", ae_depth, "truncation depth");
  acs_extract->add_option("-o,--output", ae_out, "output path");
  std::string ac_file;
  auto* acs_check = acs_cmd->add_subcommand("check", "run the axiom suite");
  acs_check->add_option("file", ac_file, "ACS JSON")->required();
  std::string ap_file, ap_out;
  auto* acs_principal = acs_cmd->add_subcommand("principal", "principal part");
  acs_principal->add_option("file", ap_file, "ACS JSON")->required();
  acs_principal->add_option("-o,--output", ap_out, "output path");
  std::string as_file, as_vertex, as_out;
  auto* acs_to_seed = acs_cmd->add_subcommand("to-seed", "rebuild seed data");
  acs_to_seed->add_option("file", as_file, "ACS JSON")->required();
  acs_to_seed->add_option("--vertex", as_vertex, "vertex id, e.g. ()")
      ->required();
  acs_to_seed->add_option("-o,--output", as_out, "output path");

  // cat
  auto* cat_cmd = app.add_subcommand("cat", "the category of ACS");
  cat_cmd->require_subcommand(1);
  std::string cm_file;
  auto* cat_check =
      cat_cmd->add_subcommand("check-morphism", "verify a morphism document");
  cat_check->add_option("file", cm_file, "morphism JSON with src/dst")
      ->required();
  std::string cp_a, cp_b, cp_out, cc_a, cc_b, cc_out;
  auto* cat_product = cat_cmd->add_subcommand("product", "categorical product");
  cat_product->add_option("a", cp_a, "first ACS JSON")->required();
  cat_product->add_option("b", cp_b, "second ACS JSON")->required();
  cat_product->add_option("-o,--output", cp_out, "write the product object");
  auto* cat_coproduct =
      cat_cmd->add_subcommand("coproduct", "categorical coproduct");
  cat_coproduct->add_option("a", cc_a, "first ACS JSON")->required();
  cat_coproduct->add_option("b", cc_b, "second ACS JSON")->required();
  cat_coproduct->add_option("-o,--output", cc_out, "write the coproduct object");

  // surface
  auto* surface_cmd = app.add_subcommand("surface", "polygon models");
  surface_cmd->require_subcommand(1);
  int se_n = 6;
  bool se_list = false;
  auto* surface_enumerate =
      surface_cmd->add_subcommand("enumerate", "count triangulations");
  surface_enumerate->add_option("-n", se_n, "polygon size")->required();
  surface_enumerate->add_flag("--list", se_list, "print every triangulation");
  int sa_n = 6;
  std::string sa_out;
  auto* surface_acs =
      surface_cmd->add_subcommand("acs", "flip graph as an ACS");
  surface_acs->add_option("-n", sa_n, "polygon size")->required();
  surface_acs->add_option("-o,--output", sa_out, "output path");
  auto* surface_hexagon = surface_cmd->add_subcommand(
      "hexagon-gr26", "verify the hexagon/Gr(2,6) isomorphism");

  // rcm
  auto* rcm_cmd = app.add_subcommand("rcm", "rooted cluster morphisms");
  rcm_cmd->require_subcommand(1);
  std::string rp_file, rp_seq;
  auto* rcm_push = rcm_cmd->add_subcommand("push", "push a mutation sequence");
  rcm_push->add_option("file", rp_file, "phi JSON")->required();
  rcm_push->add_option("--seq", rp_seq, "comma-separated directions");
  std::string rs_file;
  auto* rcm_sign = rcm_cmd->add_subcommand("sign", "consistent-sign verdict");
  rcm_sign->add_option("file", rs_file, "phi JSON")->required();
  std::string ri_file;
  std::size_t ri_depth = 3;
  auto* rcm_induce =
      rcm_cmd->add_subcommand("induce", "build + verify the induced morphism");
  rcm_induce->add_option("file", ri_file, "phi JSON")->required();
  rcm_induce->add_option("--depth", ri_depth, "truncation depth");
  std::string rv_file;
  std::size_t rv_depth = 2;
  auto* rcm_verify_vars = rcm_cmd->add_subcommand(
      "verify-vars", "variable-level mutation condition");
  rcm_verify_vars->add_option("file", rv_file, "phi JSON")->required();
  rcm_verify_vars->add_option("--depth", rv_depth, "sequence depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*seed_validate) return run_seed_validate(sv_file);
  if (*seed_mutate) return run_seed_mutate(sm_file, sm_dir, sm_trace);
  if (*explore_cmd)
    return run_explore(ex_file, ex_depth, ex_fold, ex_dot, ex_vars, jobs);
  for (const auto& [suite, a] : verify_args) {
    if (verify_cmd->get_subcommand(suite)->parsed())
      return run_verify(suite, a.file, a.depth, a.rand_count, a.rng_seed,
                        a.rank, a.max_entry, a.quantum, jobs);
  }
  if (*acs_extract) return run_acs_extract(ae_file, ae_depth, ae_out);
  if (*acs_check) return run_acs_check(ac_file);
  if (*acs_principal) return run_acs_principal(ap_file, ap_out);
  if (*acs_to_seed) return run_acs_to_seed(as_file, as_vertex, as_out);
  if (*cat_check) return run_cat_check_morphism(cm_file);
  if (*cat_product) return run_cat_product(false, cp_a, cp_b, cp_out);
  if (*cat_coproduct) return run_cat_product(true, cc_a, cc_b, cc_out);
  if (*surface_enumerate) return run_surface_enumerate(se_n, se_list);
  if (*surface_acs) return run_surface_acs(sa_n, sa_out);
  if (*surface_hexagon) return run_surface_hexagon();
  if (*rcm_push) return run_rcm_push(rp_file, rp_seq);
  if (*rcm_sign) return run_rcm_sign(rs_file);
  if (*rcm_induce) return run_rcm_induce(ri_file, ri_depth);
  if (*rcm_verify_vars) return run_rcm_verify_vars(rv_file, rv_depth);

  std::cerr << "unknown command\n";
  return kExitUsage;
}
