#include "cluster/engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <thread>

#include "cluster/errors.hpp"
#include "cluster/jsonio.hpp"
#include "cluster/smith.hpp"

namespace qcl {

namespace {

Mat gram_of(const Seed& seed) {
  const std::size_t n = seed.basis->rank();
  if (!seed.lambda) return mat_zero(n, n);
  // <b*, c*>_lambda = eval(c*, lambda(b*)) = L^T entrywise.
  return mat_transpose(map_matrix(*seed.lambda));
}

}  // namespace

Frame root_frame(const Seed& seed) {
  Frame f{seed, nullptr, {}, gram_of(seed), {}, std::nullopt};
  BasisPtr dual = dual_basis(seed.basis);
  f.initial = make_torus(dual, f.current_gram);
  for (const Label& b : seed.basis->labels())
    f.vars.emplace(dual_of(b),
                   ql_from_lattice(f.initial, lat_unit(dual, dual_of(b))));
  return f;
}

std::string path_str(const std::vector<Label>& path) {
  std::string out = "(";
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (it != path.rbegin()) out += ",";
    out += label_str(*it);
  }
  return out + ")";
}

namespace {

// Ordered-monomial evaluation of a non-negative exponent vector.
QLaurent eval_nonneg(const Frame& frame, const std::vector<Int>& v) {
  QLaurent acc = ql_one(frame.initial);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const Label& b = frame.seed.basis->labels()[i];
    acc = ql_mul(acc, ql_pow(frame.vars.at(dual_of(b)), v[i]));
  }
  return ql_scale(sym_scalar(frame.current_gram, v), acc);
}

// s^{<N,k*>_lambda} M(N), the numerator of M(N - k*) = (...) M(k*)^{-1}.
QLaurent twisted_numerator(const Frame& frame, const std::vector<Int>& nvec,
                           std::size_t k_pos) {
  Int twist = 0;
  for (std::size_t i = 0; i < nvec.size(); ++i)
    if (nvec[i] != 0) twist += nvec[i] * frame.current_gram[i][k_pos];
  return ql_scale(qc_s_power(twist), eval_nonneg(frame, nvec));
}

}  // namespace

QLaurent frame_eval(const Frame& frame, const LatticeElement& w) {
  BasisPtr dual = dual_basis(frame.seed.basis);
  if (!same_basis(w.basis, dual))
    throw BadInput("frame_eval: exponent not over the current dual basis");
  std::vector<Int> v = lat_coordinates(w);

  std::optional<std::size_t> neg_pos;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= 0) continue;
    if (v[i] != -1 || neg_pos)
      throw BadInput(
          "frame_eval: exponent must be non-negative or of the form N - k*");
    neg_pos = i;
  }

  if (!neg_pos) return eval_nonneg(frame, v);

  // w = N - k*: M(w) = s^{<N,k*>_lambda} * M(N) / M(k*) (right division).
  const Label k = frame.seed.basis->labels()[*neg_pos];
  std::vector<Int> nvec = v;
  nvec[*neg_pos] = 0;
  return exact_right_divide(twisted_numerator(frame, nvec, *neg_pos),
                            frame.vars.at(dual_of(k)));
}

Frame mutate_frame(const Frame& frame, const Label& k) {
  if (!frame.seed.ex_basis->contains(k))
    throw BadInput("mutate_frame: direction not mutable: " + label_str(k));
  const LatticeElement& bk = frame.seed.beta.columns.at(k);
  auto [bp, bm] = pos_neg_parts(bk);
  const std::size_t k_pos = frame.seed.basis->index_of(k);

  // X' = M([beta(k)]_+ - k*) + M([beta(k)]_- - k*).  The two summands need
  // not lie in the initial torus individually (only at the root frame do
  // they), but their common right factor M(k*)^{-1} can be pulled out, so
  // the sum is computed as one exact division of the twisted numerators.
  QLaurent fresh_var;
  try {
    QLaurent num =
        ql_add(twisted_numerator(frame, lat_coordinates(bp), k_pos),
               twisted_numerator(frame, lat_coordinates(bm), k_pos));
    fresh_var = exact_right_divide(num, frame.vars.at(dual_of(k)));
  } catch (const NotDivisible& e) {
    throw NotDivisible("at node " + path_str(frame.path) + ", direction " +
                       label_str(k) + ": " + e.what());
  }

  MutationResult step = mutate_seed(frame.seed, k, frame.path);
  Frame out{std::move(step.seed), frame.initial, {}, {}, frame.path,
            step.maps.fresh};
  out.path.push_back(k);
  out.current_gram = gram_of(out.seed);
  for (const Label& b : out.seed.basis->labels()) {
    if (b == step.maps.fresh)
      out.vars.emplace(dual_of(b), fresh_var);
    else
      out.vars.emplace(dual_of(b), frame.vars.at(dual_of(b)));
  }
  return out;
}

bool frames_equal_positionally(const Frame& a, const Frame& b) {
  const auto& la = a.seed.basis->labels();
  const auto& lb = b.seed.basis->labels();
  if (la.size() != lb.size()) return false;
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (!ql_equal(a.vars.at(dual_of(la[i])), b.vars.at(dual_of(lb[i]))))
      return false;
    if (a.seed.ex_basis->contains(la[i]) != b.seed.ex_basis->contains(lb[i]))
      return false;
  }
  return true;
}

namespace {

struct KeyData {
  std::string key;
  std::vector<Label> order;
};

std::string beta_block(const Frame& frame, const std::vector<Label>& order) {
  std::ostringstream out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!frame.seed.ex_basis->contains(order[i])) continue;
    const LatticeElement& col = frame.seed.beta.columns.at(order[i]);
    out << "r" << i << ":";
    for (const Label& b : order)
      out << lat_coeff(col, dual_of(b)).str() << ",";
    out << ";";
  }
  if (frame.seed.lambda) {
    out << "L:";
    for (const Label& b : order) {
      const LatticeElement& col = frame.seed.lambda->columns.at(dual_of(b));
      for (const Label& c : order) out << lat_coeff(col, c).str() << ",";
      out << ";";
    }
  }
  return out.str();
}

KeyData canonical_key_data(const Frame& frame) {
  std::vector<std::pair<std::string, Label>> items;
  for (const Label& b : frame.seed.basis->labels())
    items.emplace_back(ql_str(frame.vars.at(dual_of(b))), b);
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  // Tie groups (identical rendered variables) are permuted to minimize the
  // serialized form block; distinct variables make this a no-op.
  std::vector<Label> order;
  order.reserve(items.size());
  for (const auto& [s, l] : items) order.push_back(l);
  std::string best_block = beta_block(frame, order);

  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i + 1;
    while (j < items.size() && items[j].first == items[i].first) ++j;
    if (j - i > 1 && j - i <= 5) {
      std::vector<Label> group(order.begin() + i, order.begin() + j);
      std::sort(group.begin(), group.end());
      std::vector<Label> trial = order;
      do {
        std::copy(group.begin(), group.end(), trial.begin() + i);
        std::string block = beta_block(frame, trial);
        if (block < best_block) {
          best_block = block;
          order = trial;
        }
      } while (std::next_permutation(group.begin(), group.end()));
    }
    i = j;
  }

  std::ostringstream key;
  for (const auto& [s, l] : items) key << s << ";";
  key << "#" << best_block;
  return {key.str(), std::move(order)};
}

}  // namespace

std::string canonical_key(const Frame& frame) {
  return canonical_key_data(frame).key;
}

std::vector<Label> canonical_order(const Frame& frame) {
  return canonical_key_data(frame).order;
}

namespace {

struct ExpandResult {
  bool ok = false;
  bool laurent_failure = false;
  std::string error;
  std::optional<Frame> child;
};

ExpandResult expand_one(const Frame& frame, const Label& k) {
  ExpandResult r;
  try {
    r.child = mutate_frame(frame, k);
    r.ok = true;
  } catch (const NotDivisible& e) {
    r.laurent_failure = true;
    r.error = e.what();
  }
  return r;
}

}  // namespace

ExchangeGraph explore(const Seed& seed, const ExploreOptions& options) {
  ExchangeGraph graph;
  graph.folded = options.fold;

  Frame root = root_frame(seed);
  GraphNode node0;
  node0.id = 0;
  node0.frame = std::move(root);
  if (options.fold) node0.key = canonical_key(node0.frame);
  graph.nodes.push_back(std::move(node0));

  std::map<std::string, std::size_t> key_index;
  if (options.fold) key_index.emplace(graph.nodes[0].key, 0);

  std::vector<std::size_t> frontier{0};
  std::size_t depth = 0;
  bool hit_limit = false;

  while (!frontier.empty() && depth < options.max_depth && !hit_limit) {
    // Task list in deterministic order: frontier nodes, then directions in
    // basis order (minus the backtrack direction in tree mode).
    std::vector<std::pair<std::size_t, Label>> tasks;
    for (std::size_t id : frontier) {
      const GraphNode& n = graph.nodes[id];
      for (const Label& k : n.frame.seed.ex_basis->labels()) {
        if (!options.fold && n.frame.arrived_by && k == *n.frame.arrived_by)
          continue;
        tasks.emplace_back(id, k);
      }
    }

    std::vector<ExpandResult> results(tasks.size());
    std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    if (jobs == 1 || tasks.size() < 2) {
      for (std::size_t t = 0; t < tasks.size(); ++t)
        results[t] =
            expand_one(graph.nodes[tasks[t].first].frame, tasks[t].second);
    } else {
      std::vector<std::thread> pool;
      std::size_t workers = std::min(jobs, tasks.size());
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
          for (std::size_t t = w; t < tasks.size(); t += workers)
            results[t] =
                expand_one(graph.nodes[tasks[t].first].frame, tasks[t].second);
        });
      }
      for (auto& th : pool) th.join();
    }

    // Sequential deterministic merge.
    std::vector<std::size_t> next;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      auto [id, k] = tasks[t];
      ExpandResult& r = results[t];
      if (!r.ok) {
        graph.failures.push_back(
            {graph.nodes[id].frame.path, k, std::move(r.error)});
        continue;
      }
      if (options.fold) {
        std::string key = canonical_key(*r.child);
        auto it = key_index.find(key);
        if (it != key_index.end()) {
          graph.nodes[id].edges.emplace_back(k, it->second);
          continue;
        }
        std::size_t nid = graph.nodes.size();
        GraphNode n;
        n.id = nid;
        n.frame = std::move(*r.child);
        n.key = std::move(key);
        graph.nodes.push_back(std::move(n));
        key_index.emplace(graph.nodes.back().key, nid);
        graph.nodes[id].edges.emplace_back(k, nid);
        next.push_back(nid);
      } else {
        std::size_t nid = graph.nodes.size();
        GraphNode n;
        n.id = nid;
        n.frame = std::move(*r.child);
        graph.nodes.push_back(std::move(n));
        graph.nodes[id].edges.emplace_back(k, nid);
        next.push_back(nid);
      }
      if (graph.nodes.size() >= options.max_nodes) {
        hit_limit = true;
        graph.complete = false;
        break;
      }
    }
    frontier = std::move(next);
    ++depth;
  }

  graph.closed = frontier.empty() && !hit_limit;
  return graph;
}

VariableReport collect_variables(const ExchangeGraph& graph) {
  VariableReport report;
  std::map<std::string, std::size_t> seen;  // render -> index (mutable)
  std::map<std::string, std::size_t> seen_frozen;
  for (const GraphNode& node : graph.nodes) {
    const Seed& s = node.frame.seed;
    for (const Label& b : s.basis->labels()) {
      const QLaurent& var = node.frame.vars.at(dual_of(b));
      std::string r = ql_str(var);
      if (s.ex_basis->contains(b)) {
        if (seen.emplace(r, report.mutable_vars.size()).second)
          report.mutable_vars.push_back(var);
      } else {
        bool invertible =
            std::find(s.inv.begin(), s.inv.end(), b) != s.inv.end();
        auto [it, fresh] =
            seen_frozen.emplace(r, report.frozen_vars.size());
        if (fresh)
          report.frozen_vars.emplace_back(var, invertible);
        else if (invertible)
          report.frozen_vars[it->second].second = true;
      }
    }
  }
  return report;
}

VerifyReport verify_laurent(const Seed& seed, std::size_t depth,
                            std::size_t jobs) {
  ExploreOptions opt;
  opt.max_depth = depth;
  opt.fold = false;
  opt.jobs = jobs;
  ExchangeGraph g = explore(seed, opt);
  VerifyReport rep{"laurent", g.failures.empty(), {}};
  rep.details.push_back("frames visited: " + std::to_string(g.nodes.size()));
  if (!g.complete)
    rep.details.push_back("warning: node limit reached, partial result");
  for (const LaurentFailure& f : g.failures)
    rep.details.push_back("violation " + f.message);
  return rep;
}

VerifyReport verify_involution(const Seed& seed) {
  VerifyReport rep{"involution", true, {}};
  Frame root = root_frame(seed);
  for (const Label& k : seed.ex_basis->labels()) {
    bool seed_ok = check_involution(seed, k);
    Frame once = mutate_frame(root, k);
    Frame twice = mutate_frame(once, *once.arrived_by);
    bool frame_ok = frames_equal_positionally(root, twice);
    if (!seed_ok || !frame_ok) rep.pass = false;
    rep.details.push_back("direction " + label_str(k) + ": seed " +
                          (seed_ok ? "ok" : "FAIL") + ", frame " +
                          (frame_ok ? "ok" : "FAIL"));
  }
  return rep;
}

VerifyReport verify_signs(const Seed& seed) {
  VerifyReport rep{"signs", true, {}};
  for (const Label& k : seed.ex_basis->labels()) {
    MutationMaps maps = mutation_maps(seed, k, fresh_label(seed, k, {}));
    bool beta_ok = map_equal(mutate_beta_signed(seed, maps, true),
                             mutate_beta_signed(seed, maps, false));
    bool lambda_ok = true;
    if (seed.lambda)
      lambda_ok = map_equal(mutate_lambda_signed(seed, maps, true),
                            mutate_lambda_signed(seed, maps, false));
    if (!beta_ok || !lambda_ok) rep.pass = false;
    rep.details.push_back("direction " + label_str(k) + ": beta " +
                          (beta_ok ? "ok" : "FAIL") + ", lambda " +
                          (lambda_ok ? "ok" : "FAIL"));
  }
  return rep;
}

VerifyReport verify_compat(const Seed& seed) {
  VerifyReport rep{"compat", true, {}};
  auto report_seed = [&rep](const Seed& s, const std::string& where) {
    std::vector<Violation> v = validate(s);
    if (!v.empty()) {
      rep.pass = false;
      for (const Violation& x : v)
        rep.details.push_back(where + ": " + x.rule + " — " + x.detail);
    } else {
      rep.details.push_back(where + ": valid");
    }
  };
  report_seed(seed, "root");
  for (const Label& k : seed.ex_basis->labels())
    report_seed(mutate_seed(seed, k).seed, "mu_" + label_str(k));
  return rep;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string graph_dot(const ExchangeGraph& graph) {
  std::ostringstream out;
  out << "digraph exchange {\n";
  for (const GraphNode& n : graph.nodes)
    out << "  n" << n.id << " [label=\""
        << dot_escape(path_str(n.frame.path)) << "\"];\n";
  for (const GraphNode& n : graph.nodes)
    for (const auto& [k, target] : n.edges)
      out << "  n" << n.id << " -> n" << target << " [label=\""
          << dot_escape(label_str(k)) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string graph_json(const ExchangeGraph& graph) {
  nlohmann::json j;
  j["folded"] = graph.folded;
  j["closed"] = graph.closed;
  j["complete"] = graph.complete;
  j["node_count"] = graph.nodes.size();
  nlohmann::json nodes = nlohmann::json::array();
  for (const GraphNode& n : graph.nodes) {
    nlohmann::json nj;
    nj["id"] = n.id;
    nj["path"] = path_str(n.frame.path);
    nlohmann::json edges = nlohmann::json::object();
    for (const auto& [k, target] : n.edges) edges[label_str(k)] = target;
    nj["edges"] = edges;
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = nodes;
  nlohmann::json fails = nlohmann::json::array();
  for (const LaurentFailure& f : graph.failures) {
    nlohmann::json fj;
    fj["path"] = path_str(f.path);
    fj["direction"] = label_str(f.direction);
    fj["message"] = f.message;
    fails.push_back(std::move(fj));
  }
  j["laurent_failures"] = fails;
  return j.dump(2) + "\n";
}

std::string variables_json(const ExchangeGraph& graph) {
  VariableReport rep = collect_variables(graph);
  nlohmann::json j;
  nlohmann::json mut = nlohmann::json::array();
  for (const QLaurent& v : rep.mutable_vars) mut.push_back(ql_str(v));
  nlohmann::json froz = nlohmann::json::array();
  for (const auto& [v, invertible] : rep.frozen_vars) {
    nlohmann::json f;
    f["var"] = ql_str(v);
    f["invertible"] = invertible;
    froz.push_back(std::move(f));
  }
  j["mutable"] = mut;
  j["frozen"] = froz;
  j["mutable_count"] = rep.mutable_vars.size();
  j["frozen_count"] = rep.frozen_vars.size();
  nlohmann::json per_node = nlohmann::json::array();
  for (const GraphNode& n : graph.nodes) {
    nlohmann::json nj;
    nj["id"] = n.id;
    nj["path"] = path_str(n.frame.path);
    nlohmann::json vars = nlohmann::json::object();
    for (const auto& [l, v] : n.frame.vars) vars[label_str(l)] = ql_str(v);
    nj["vars"] = vars;
    per_node.push_back(std::move(nj));
  }
  j["nodes"] = per_node;
  return j.dump(2) + "\n";
}

}  // namespace qcl
