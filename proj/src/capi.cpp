#include "qcluster.h"

#include <cstring>
#include <exception>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cluster/acs.hpp"
#include "cluster/acscat.hpp"
#include "cluster/engine.hpp"
#include "cluster/errors.hpp"
#include "cluster/jsonio.hpp"
#include "cluster/randgen.hpp"
#include "cluster/rcm.hpp"
#include "cluster/seed.hpp"
#include "cluster/surface.hpp"

using nlohmann::json;

struct qcl_seed {
  qcl::Seed value;
};

struct qcl_acs {
  qcl::AcsTruncation value;
};

namespace {

thread_local std::string g_last_error;

int fail(int status, const std::string& message) {
  g_last_error = message;
  return status;
}

int status_of(const qcl::Error& e) {
  const std::string& c = e.code();
  if (c == "BadInput") return QCL_BAD_INPUT;
  if (c == "NotDivisible") return QCL_NOT_DIVISIBLE;
  if (c == "DivideByZero") return QCL_DIVIDE_BY_ZERO;
  if (c == "NoRetraction") return QCL_NO_RETRACTION;
  if (c == "Unsupported") return QCL_UNSUPPORTED;
  return QCL_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return QCL_OK;
  } catch (const qcl::Error& e) {
    return fail(status_of(e), e.code() + ": " + e.what());
  } catch (const json::exception& e) {
    return fail(QCL_BAD_INPUT, std::string("BadInput: ") + e.what());
  } catch (const std::exception& e) {
    return fail(QCL_INTERNAL, std::string("Internal: ") + e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

void put(char** out, const json& j) {
  if (out) *out = dup_string(j.dump(2));
}

// Throwing null checks keep every entry point a one-line guarded body.
template <typename T>
const T& ref(const T* p, const char* what) {
  if (!p) throw qcl::BadInput(std::string(what) + " must not be NULL");
  return *p;
}

std::string str(const char* p, const char* what) {
  if (!p) throw qcl::BadInput(std::string(what) + " must not be NULL");
  return std::string(p);
}

template <typename T>
void check_out(T** out) {
  if (!out) throw qcl::BadInput("output handle must not be NULL");
}

json options_of(const char* options_json) {
  if (!options_json || !*options_json) return json::object();
  json j = json::parse(options_json);
  if (!j.is_object()) throw qcl::BadInput("options must be a JSON object");
  return j;
}

json map_json(const qcl::LinearMap& f) {
  json rows = json::array();
  qcl::Mat m = qcl::map_matrix(f);
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& v : row) r.push_back(qcl::json_int(v));
    rows.push_back(std::move(r));
  }
  json dom = json::array(), cod = json::array();
  for (const auto& l : f.domain->labels()) dom.push_back(qcl::label_str(l));
  for (const auto& l : f.codomain->labels()) cod.push_back(qcl::label_str(l));
  return json{{"domain", dom}, {"codomain", cod}, {"matrix", rows}};
}

json violations_json(const std::vector<qcl::Violation>& violations) {
  json arr = json::array();
  for (const auto& v : violations)
    arr.push_back(json{{"rule", v.rule}, {"detail", v.detail}});
  return arr;
}

json acs_violations_json(const std::vector<qcl::AcsViolation>& violations) {
  json arr = json::array();
  for (const auto& v : violations)
    arr.push_back(
        json{{"where", v.where}, {"rule", v.rule}, {"detail", v.detail}});
  return arr;
}

json morphism_report_json(const qcl::MorphismReport& report) {
  return json{{"pass", report.pass()},
              {"violations", acs_violations_json(report.violations)},
              {"notes", acs_violations_json(report.notes)}};
}

std::vector<qcl::Label> parse_sequence(const char* csv) {
  std::vector<qcl::Label> seq;
  if (!csv) return seq;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) seq.push_back(qcl::primal(item));
  }
  return seq;
}

qcl::RandomSeedOptions random_options(const json& o, std::uint64_t rng_seed) {
  qcl::RandomSeedOptions r;
  r.mutable_rank = o.value("rank", 3);
  r.extra_frozen = o.value("extra_frozen", 0);
  r.max_entry = o.value("max_entry", 3);
  r.quantum = o.value("quantum", false);
  r.with_frozen = o.value("frozen", r.quantum || r.extra_frozen > 0);
  r.rng_seed = rng_seed;
  return r;
}

}  // namespace

extern "C" {

const char* qcl_last_error(void) { return g_last_error.c_str(); }

void qcl_string_free(char* s) { delete[] s; }

/* ---- seeds ------------------------------------------------------------ */

int qcl_seed_parse(const char* text, qcl_seed** out) {
  return guarded([&] {
    qcl::Seed s = qcl::seed_from_json(str(text, "json"));
    check_out(out);
    *out = new qcl_seed{std::move(s)};
  });
}

void qcl_seed_free(qcl_seed* seed) { delete seed; }

int qcl_seed_to_json(const qcl_seed* seed, char** out) {
  return guarded(
      [&] { put(out, qcl::seed_to_json(ref(seed, "seed").value)); });
}

int qcl_seed_validate(const qcl_seed* seed, char** report) {
  return guarded([&] {
    auto violations = qcl::validate(ref(seed, "seed").value);
    put(report, json{{"valid", violations.empty()},
                     {"violations", violations_json(violations)}});
  });
}

int qcl_seed_mutate(const qcl_seed* seed, const char* direction, int trace,
                    char** report) {
  return guarded([&] {
    qcl::MutationResult mr = qcl::mutate_seed(
        ref(seed, "seed").value, qcl::primal(str(direction, "direction")));
    json out{{"direction", qcl::label_str(mr.maps.k)},
             {"fresh", qcl::label_str(mr.maps.fresh)},
             {"seed", json::parse(qcl::seed_to_json(mr.seed))}};
    if (trace) {
      out["maps"] = json{{"f_plus", map_json(mr.maps.f_plus)},
                         {"f_minus", map_json(mr.maps.f_minus)},
                         {"fi_plus", map_json(mr.maps.fi_plus)},
                         {"fi_minus", map_json(mr.maps.fi_minus)},
                         {"e_plus", map_json(mr.maps.e_plus)},
                         {"e_minus", map_json(mr.maps.e_minus)},
                         {"ei_plus", map_json(mr.maps.ei_plus)},
                         {"ei_minus", map_json(mr.maps.ei_minus)}};
    }
    put(report, out);
  });
}

int qcl_seed_random(unsigned long long rng_seed, size_t mutable_rank,
                    size_t extra_frozen, int max_entry, int quantum,
                    qcl_seed** out) {
  return guarded([&] {
    qcl::RandomSeedOptions o;
    o.mutable_rank = mutable_rank;
    o.extra_frozen = extra_frozen;
    o.max_entry = max_entry;
    o.quantum = quantum != 0;
    o.with_frozen = extra_frozen > 0 || o.quantum;
    o.rng_seed = rng_seed;
    qcl::Seed s = qcl::random_seed(o);
    check_out(out);
    *out = new qcl_seed{std::move(s)};
  });
}

/* ---- exploration and verification -------------------------------------- */

int qcl_explore(const qcl_seed* seed, const char* options_json, char** report,
                char** dot, char** vars_json) {
  return guarded([&] {
    json o = options_of(options_json);
    qcl::ExploreOptions eo;
    eo.max_depth = o.value("depth", 6);
    eo.fold = o.value("fold", true);
    eo.jobs = o.value("jobs", 1);
    eo.max_nodes = o.value("max_nodes", 100000);
    qcl::ExchangeGraph graph = qcl::explore(ref(seed, "seed").value, eo);
    std::size_t edges = 0;
    for (const auto& node : graph.nodes) edges += node.edges.size();
    json failures = json::array();
    for (const auto& f : graph.failures)
      failures.push_back(json{{"path", qcl::path_str(f.path)},
                              {"direction", qcl::label_str(f.direction)},
                              {"message", f.message}});
    put(report, json{{"nodes", graph.nodes.size()},
                     {"edges", edges},
                     {"closed", graph.closed},
                     {"complete", graph.complete},
                     {"folded", graph.folded},
                     {"failures", std::move(failures)},
                     {"graph", json::parse(qcl::graph_json(graph))}});
    if (dot) put(dot, qcl::graph_dot(graph));
    if (vars_json) put(vars_json, qcl::variables_json(graph));
  });
}

int qcl_verify(const qcl_seed* seed, const char* suite,
               const char* options_json, char** report) {
  return guarded([&] {
    std::string kind = str(suite, "suite");
    json o = options_of(options_json);
    std::size_t depth = o.value("depth", 6);
    std::size_t jobs = o.value("jobs", 1);
    std::size_t rand_count = o.value("rand", 0);
    std::uint64_t rng_seed = o.value("rng_seed", std::uint64_t{0});

    bool all = true;
    json runs = json::array();
    auto run_one = [&](const qcl::Seed& s, const std::string& name) {
      qcl::VerifyReport r;
      if (kind == "laurent")
        r = qcl::verify_laurent(s, depth, jobs);
      else if (kind == "involution")
        r = qcl::verify_involution(s);
      else if (kind == "signs")
        r = qcl::verify_signs(s);
      else if (kind == "compat")
        r = qcl::verify_compat(s);
      else
        throw qcl::BadInput("unknown verify suite: " + kind);
      all = all && r.pass;
      runs.push_back(
          json{{"seed", name}, {"pass", r.pass}, {"details", r.details}});
    };

    if (seed) run_one(seed->value, "input");
    for (std::size_t i = 0; i < rand_count; ++i)
      run_one(qcl::random_seed(random_options(o, rng_seed + i)),
              "random:" + std::to_string(rng_seed + i));
    if (!seed && rand_count == 0)
      throw qcl::BadInput("verify needs a seed or a random corpus");
    put(report, json{{"suite", kind}, {"pass", all}, {"runs", runs}});
  });
}

/* ---- abstract cluster structures ---------------------------------------- */

int qcl_acs_from_seed(const qcl_seed* seed, size_t depth, qcl_acs** out) {
  return guarded([&] {
    qcl::AcsTruncation acs =
        qcl::acs_from_seed(ref(seed, "seed").value, depth);
    check_out(out);
    *out = new qcl_acs{std::move(acs)};
  });
}

void qcl_acs_free(qcl_acs* acs) { delete acs; }

int qcl_acs_parse(const char* text, qcl_acs** out) {
  return guarded([&] {
    qcl::AcsTruncation acs = qcl::acs_from_json(str(text, "json"));
    check_out(out);
    *out = new qcl_acs{std::move(acs)};
  });
}

int qcl_acs_to_json(const qcl_acs* acs, char** out) {
  return guarded([&] { put(out, qcl::acs_to_json(ref(acs, "acs").value)); });
}

int qcl_acs_check(const qcl_acs* acs, char** report) {
  return guarded([&] {
    const qcl::AcsTruncation& a = ref(acs, "acs").value;
    auto violations = qcl::verify_acs(a);
    qcl::RankReport rank = qcl::classify(a);
    json cls{{"total_rank", rank.total_rank},
             {"mutable_rank", rank.mutable_rank},
             {"frozen_rank", rank.frozen_rank},
             {"constant_rank", rank.constant_rank},
             {"weakly_connected", rank.weakly_connected},
             {"strongly_connected", rank.strongly_connected},
             {"bi_directed", rank.bi_directed},
             {"rootable", rank.rootable},
             {"root", rank.root}};
    put(report, json{{"pass", violations.empty()},
                     {"violations", acs_violations_json(violations)},
                     {"classification", std::move(cls)},
                     {"quantum", a.quantum},
                     {"vertices", a.vertices.size()},
                     {"edges", a.edges.size()}});
  });
}

int qcl_acs_principal(const qcl_acs* acs, qcl_acs** out) {
  return guarded([&] {
    qcl::AcsTruncation p = qcl::principal_part(ref(acs, "acs").value);
    check_out(out);
    *out = new qcl_acs{std::move(p)};
  });
}

int qcl_acs_to_seed(const qcl_acs* acs, const char* vertex_id,
                    char** seed_json) {
  return guarded([&] {
    qcl::Seed s =
        qcl::seed_from_acs(ref(acs, "acs").value, str(vertex_id, "vertex"));
    put(seed_json, qcl::seed_to_json(s));
  });
}

/* ---- the category of abstract cluster structures ------------------------ */

int qcl_cat_check_morphism(const char* morphism_json, char** report) {
  return guarded([&] {
    json doc = json::parse(str(morphism_json, "morphism_json"));
    qcl::AcsTruncation src = qcl::acs_from_json(doc.at("src").dump());
    qcl::AcsTruncation dst = qcl::acs_from_json(doc.at("dst").dump());
    qcl::AcsMorphism m = qcl::morphism_from_json(doc.dump(), src, dst);
    bool quantum = doc.value("quantum", src.quantum && dst.quantum);
    qcl::MorphismReport r = qcl::verify_morphism(m, quantum);
    json out = morphism_report_json(r);
    out["isomorphism"] = r.pass() && qcl::is_isomorphism(m);
    put(report, out);
  });
}

int qcl_cat_product(const char* a_json, const char* b_json, char** report) {
  return guarded([&] {
    qcl::AcsTruncation a = qcl::acs_from_json(str(a_json, "a_json"));
    qcl::AcsTruncation b = qcl::acs_from_json(str(b_json, "b_json"));
    qcl::ProductResult p = qcl::product(a, b);
    auto object_violations = qcl::verify_acs(p.acs);
    qcl::MorphismReport r1 = qcl::verify_morphism(p.proj1, p.acs.quantum);
    qcl::MorphismReport r2 = qcl::verify_morphism(p.proj2, p.acs.quantum);
    qcl::AcsMorphism mediator = qcl::product_mediator(p, p.proj1, p.proj2);
    bool mediator_identity =
        qcl::morphisms_equal(mediator, qcl::identity_morphism(p.acs));
    bool pass = object_violations.empty() && r1.pass() && r2.pass() &&
                mediator_identity;
    put(report,
        json{{"pass", pass},
             {"object", json::parse(qcl::acs_to_json(p.acs))},
             {"object_violations", acs_violations_json(object_violations)},
             {"proj1", morphism_report_json(r1)},
             {"proj2", morphism_report_json(r2)},
             {"mediator_identity", mediator_identity}});
  });
}

int qcl_cat_coproduct(const char* a_json, const char* b_json, char** report) {
  return guarded([&] {
    qcl::AcsTruncation a = qcl::acs_from_json(str(a_json, "a_json"));
    qcl::AcsTruncation b = qcl::acs_from_json(str(b_json, "b_json"));
    qcl::CoproductResult c = qcl::coproduct(a, b);
    auto object_violations = qcl::verify_acs(c.acs);
    qcl::MorphismReport r1 = qcl::verify_morphism(c.inj1, c.acs.quantum);
    qcl::MorphismReport r2 = qcl::verify_morphism(c.inj2, c.acs.quantum);
    qcl::AcsMorphism mediator = qcl::coproduct_mediator(c, c.inj1, c.inj2);
    bool mediator_identity =
        qcl::morphisms_equal(mediator, qcl::identity_morphism(c.acs));
    bool pass = object_violations.empty() && r1.pass() && r2.pass() &&
                mediator_identity;
    put(report,
        json{{"pass", pass},
             {"object", json::parse(qcl::acs_to_json(c.acs))},
             {"object_violations", acs_violations_json(object_violations)},
             {"inj1", morphism_report_json(r1)},
             {"inj2", morphism_report_json(r2)},
             {"mediator_identity", mediator_identity}});
  });
}

/* ---- polygon surfaces ---------------------------------------------------- */

int qcl_surface_enumerate(int n, char** report) {
  return guarded([&] {
    auto tris = qcl::enumerate_triangulations(n);
    json list = json::array();
    for (const auto& t : tris) list.push_back(qcl::tri_str(t));
    put(report,
        json{{"n", n}, {"count", tris.size()}, {"triangulations", list}});
  });
}

int qcl_surface_acs(int n, qcl_acs** out) {
  return guarded([&] {
    qcl::AcsTruncation acs = qcl::acs_from_polygon(n);
    check_out(out);
    *out = new qcl_acs{std::move(acs)};
  });
}

int qcl_surface_hexagon_gr26(char** report) {
  return guarded([&] {
    qcl::HexagonGr26 h = qcl::hexagon_gr26_isomorphism();
    auto surface_violations = qcl::verify_acs(h.surface);
    auto cluster_violations = qcl::verify_acs(h.cluster);
    qcl::MorphismReport r = qcl::verify_morphism(h.iso, false);
    bool iso = r.pass() && qcl::is_isomorphism(h.iso);
    bool pass = surface_violations.empty() && cluster_violations.empty() &&
                r.pass() && iso;
    put(report,
        json{{"pass", pass},
             {"vertices", h.surface.vertices.size()},
             {"edges", h.surface.edges.size()},
             {"isomorphism", iso},
             {"surface_violations", acs_violations_json(surface_violations)},
             {"cluster_violations", acs_violations_json(cluster_violations)},
             {"morphism", morphism_report_json(r)}});
  });
}

/* ---- rooted cluster morphisms -------------------------------------------- */

int qcl_rcm_push(const char* phi_json, const char* sequence_csv,
                 char** report) {
  return guarded([&] {
    qcl::ExAdmissibleMap m = qcl::rcm_from_json(str(phi_json, "phi_json"));
    qcl::PushResult pr = qcl::push_sequence(m, parse_sequence(sequence_csv));
    json f_seq = json::array();
    for (const auto& l : pr.f_seq) f_seq.push_back(qcl::label_str(l));
    put(report, json{{"f_seq", std::move(f_seq)},
                     {"phi_pushed", json::parse(qcl::rcm_to_json(pr.pushed))}});
  });
}

int qcl_rcm_sign(const char* phi_json, char** report) {
  return guarded([&] {
    qcl::ExAdmissibleMap m = qcl::rcm_from_json(str(phi_json, "phi_json"));
    qcl::SignReport r = qcl::consistently_positive(m);
    const char* verdict = r.verdict == qcl::SignVerdict::Positive ? "positive"
                          : r.verdict == qcl::SignVerdict::Negative
                              ? "negative"
                              : "mixed";
    json components = json::array();
    for (const auto& c : r.components) {
      json members = json::array();
      for (const auto& l : c.members) members.push_back(qcl::label_str(l));
      components.push_back(json{{"members", std::move(members)},
                                {"sign", std::string(1, c.sign)}});
    }
    put(report, json{{"verdict", verdict}, {"components", components}});
  });
}

int qcl_rcm_induce(const char* phi_json, size_t depth, char** report) {
  return guarded([&] {
    qcl::ExAdmissibleMap m = qcl::rcm_from_json(str(phi_json, "phi_json"));
    qcl::AcsMorphism mor = qcl::induced_acs_morphism(m, depth);
    bool quantum = mor.src.quantum && mor.dst.quantum;
    qcl::MorphismReport r = qcl::verify_morphism(mor, quantum);
    json out = morphism_report_json(r);
    out["depth"] = depth;
    out["src_vertices"] = mor.src.vertices.size();
    out["dst_vertices"] = mor.dst.vertices.size();
    out["morphism"] = json::parse(qcl::morphism_to_json(mor));
    put(report, out);
  });
}

int qcl_rcm_verify_vars(const char* phi_json, size_t depth, char** report) {
  return guarded([&] {
    qcl::ExAdmissibleMap m = qcl::rcm_from_json(str(phi_json, "phi_json"));
    qcl::VarLevelReport r = qcl::verify_variable_level(m, depth);
    json failures = json::array();
    for (const auto& f : r.failures)
      failures.push_back(json{{"path", f.path},
                              {"label", qcl::label_str(f.label)},
                              {"detail", f.detail}});
    put(report, json{{"pass", r.pass()},
                     {"checked", r.checked},
                     {"failures", std::move(failures)}});
  });
}

}  // extern "C"
