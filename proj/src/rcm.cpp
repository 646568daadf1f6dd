#include "cluster/rcm.hpp"

#include <algorithm>
#include <deque>

#include <json.hpp>

#include "cluster/acs.hpp"
#include "cluster/engine.hpp"
#include "cluster/errors.hpp"
#include "cluster/jsonio.hpp"

namespace qcl {

namespace {

bool basis_has(const BasisPtr& basis, const Label& l) {
  const auto& labels = basis->labels();
  return std::find(labels.begin(), labels.end(), l) != labels.end();
}

Int specialize_value(const ExAdmissibleMap& m, const Label& b) {
  auto it = m.specialize.find(b);
  return it == m.specialize.end() ? Int(1) : it->second;
}

// One mutation step of phi: the source label k is replaced by fresh1, and
// (when phi(k) = img != 0) every label with image img now points at the
// target replacement fresh2.
std::map<Label, Label> step_phi(const std::map<Label, Label>& phi,
                                const Label& k, const Label& fresh1,
                                const std::optional<Label>& img,
                                const std::optional<Label>& fresh2) {
  std::map<Label, Label> out;
  for (const auto& [b, c] : phi) {
    if (b == k) continue;
    if (img && c == *img)
      out.emplace(b, *fresh2);
    else
      out.emplace(b, c);
  }
  if (img) out.emplace(fresh1, *fresh2);
  return out;
}

}  // namespace

std::optional<Label> phi_image(const ExAdmissibleMap& m, const Label& b) {
  if (!basis_has(m.source.basis, b))
    throw BadInput("phi_image: '" + label_str(b) + "' is not a source label");
  auto it = m.phi.find(b);
  if (it == m.phi.end()) return std::nullopt;
  return it->second;
}

std::vector<Violation> validate_ex_admissible(const ExAdmissibleMap& m) {
  std::vector<Violation> out;
  for (const auto& [b, c] : m.phi) {
    if (!basis_has(m.source.basis, b))
      out.push_back({"phi-domain",
                     "'" + label_str(b) + "' is not a source basis label"});
    if (!basis_has(m.target.basis, c))
      out.push_back({"phi-codomain",
                     "'" + label_str(c) + "' is not a target basis label"});
  }
  for (const Label& k : m.source.ex_basis->labels()) {
    auto it = m.phi.find(k);
    if (it != m.phi.end() && !basis_has(m.target.ex_basis, it->second))
      out.push_back({"phi-ex-admissible",
                     "mutable '" + label_str(k) + "' maps to non-mutable '" +
                         label_str(it->second) + "'"});
  }
  for (const auto& [b, val] : m.specialize) {
    (void)val;
    if (!basis_has(m.source.basis, b))
      out.push_back({"specialize-domain",
                     "'" + label_str(b) + "' is not a source basis label"});
    else if (m.phi.count(b))
      out.push_back({"specialize-nonzero",
                     "'" + label_str(b) + "' has a non-zero image"});
  }
  return out;
}

bool is_ex_admissible(const ExAdmissibleMap& m) {
  return validate_ex_admissible(m).empty();
}

PushResult push_sequence(const ExAdmissibleMap& m,
                         const std::vector<Label>& seq) {
  auto bad = validate_ex_admissible(m);
  if (!bad.empty())
    throw BadInput("push_sequence: " + bad.front().rule + ": " +
                   bad.front().detail);
  PushResult out;
  out.pushed = m;
  std::vector<Label> spath, tpath;
  for (const Label& k : seq) {
    auto img = phi_image(out.pushed, k);
    MutationResult mr1 = mutate_seed(out.pushed.source, k, spath);
    spath.push_back(k);
    std::optional<Label> fresh2;
    if (img) {
      MutationResult mr2 = mutate_seed(out.pushed.target, *img, tpath);
      tpath.push_back(*img);
      out.f_seq.push_back(*img);
      fresh2 = mr2.maps.fresh;
      out.pushed.target = mr2.seed;
    }
    out.pushed.phi =
        step_phi(out.pushed.phi, k, mr1.maps.fresh, img, fresh2);
    out.pushed.source = mr1.seed;
  }
  return out;
}

SignReport consistently_positive(const ExAdmissibleMap& m) {
  auto bad = validate_ex_admissible(m);
  if (!bad.empty())
    throw BadInput("consistently_positive: " + bad.front().rule + ": " +
                   bad.front().detail);
  const Seed& s1 = m.source;
  const Seed& s2 = m.target;
  BasisPtr d2 = dual_basis(s2.basis);

  // phi^* : Z[B1]^* -> Z[B2]^*, b^* -> phi(b)^* (0-labels drop out).
  auto push_dual = [&](const LatticeElement& v) {
    std::map<Label, Int> coords;
    for (const Label& b : s1.basis->labels()) {
      Int c = lat_coeff(v, dual_of(b));
      if (c == 0) continue;
      auto img = phi_image(m, b);
      if (img) coords[dual_of(*img)] += c;
    }
    for (auto it = coords.begin(); it != coords.end();)
      it = it->second == 0 ? coords.erase(it) : std::next(it);
    return lat_make(d2, std::move(coords));
  };

  const auto& ex = s1.ex_basis->labels();
  std::map<Label, char> sign;
  for (const Label& k : ex) {
    // Check the signed-parts identity phi^*([beta1(k)]_pm) = [beta2(phi k)]_pm
    // (the primary form of the dichotomy; the difference identity follows).
    // For specialised k the right side is 0, so both parts must die under
    // phi^* -- surviving couplings of k obstruct consistent signing.
    auto [col_p, col_m] = pos_neg_parts(s1.beta.columns.at(k));
    LatticeElement lhs_p = push_dual(col_p);
    LatticeElement lhs_m = push_dual(col_m);
    auto img = phi_image(m, k);
    LatticeElement rhs =
        img ? s2.beta.columns.at(*img) : lat_zero(d2);
    auto [rhs_p, rhs_m] = pos_neg_parts(rhs);
    bool pos = lat_equal(lhs_p, rhs_p) && lat_equal(lhs_m, rhs_m);
    bool neg = lat_equal(lhs_p, rhs_m) && lat_equal(lhs_m, rhs_p);
    sign[k] = pos && neg ? '0' : pos ? '+' : neg ? '-' : 'x';
  }

  // Connected components of the exchange quiver on ex1.
  auto coupled = [&](const Label& j, const Label& k) {
    return eval_pairing(s1.beta.columns.at(k), lat_unit(s1.basis, j)) != 0 ||
           eval_pairing(s1.beta.columns.at(j), lat_unit(s1.basis, k)) != 0;
  };
  SignReport rep;
  std::map<Label, bool> seen;
  for (const Label& start : ex) {
    if (seen[start]) continue;
    ComponentSign comp;
    std::deque<Label> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      Label at = queue.front();
      queue.pop_front();
      comp.members.push_back(at);
      char s = sign.at(at);
      if (s != '0') {
        if (comp.sign == '0')
          comp.sign = s;
        else if (comp.sign != s)
          comp.sign = 'x';
      }
      for (const Label& next : ex)
        if (!seen[next] && coupled(at, next)) {
          seen[next] = true;
          queue.push_back(next);
        }
    }
    rep.components.push_back(std::move(comp));
  }

  bool has_plus = false, has_minus = false, has_x = false;
  for (const auto& comp : rep.components) {
    has_plus |= comp.sign == '+';
    has_minus |= comp.sign == '-';
    has_x |= comp.sign == 'x';
  }
  rep.verdict = has_x || (has_plus && has_minus) ? SignVerdict::Mixed
                : has_minus                      ? SignVerdict::Negative
                                                 : SignVerdict::Positive;
  return rep;
}

namespace {

// The mutated direction of an edge and its replacement, read off the bases:
// the unique source label missing from the destination and vice versa.
// Returned as primal labels.
std::pair<Label, Label> edge_direction(const AcsVertex& src,
                                       const AcsVertex& dst) {
  std::optional<Label> k, repl;
  for (const Label& l : src.a_basis->labels())
    if (!basis_has(dst.a_basis, l)) {
      if (k) throw Internal("edge_direction: source basis not a one-step move");
      k = primal(l.text);
    }
  for (const Label& l : dst.a_basis->labels())
    if (!basis_has(src.a_basis, l)) {
      if (repl)
        throw Internal("edge_direction: target basis not a one-step move");
      repl = primal(l.text);
    }
  if (!k || !repl) throw Internal("edge_direction: bases coincide");
  return {*k, *repl};
}

}  // namespace

AcsMorphism induced_acs_morphism(const ExAdmissibleMap& m, std::size_t depth) {
  SignReport sr = consistently_positive(m);
  if (sr.verdict == SignVerdict::Negative)
    throw Unsupported(
        "induced_acs_morphism: phi is consistently negative; only the "
        "positive branch is constructed");
  if (sr.verdict == SignVerdict::Mixed)
    throw BadInput("induced_acs_morphism: phi is not consistently signed");
  // No other label may share the image of a surviving exchangeable
  // direction: mutating k relabels that image, while the other label's
  // variable is untouched, so no rooted cluster morphism induces such a phi
  // and the would-be natural transformations fail their squares.
  for (const Label& k : m.source.ex_basis->labels()) {
    auto img = phi_image(m, k);
    if (!img) continue;
    for (const Label& b : m.source.basis->labels()) {
      if (b == k) continue;
      auto other = phi_image(m, b);
      if (other && *other == *img)
        throw BadInput("induced_acs_morphism: phi identifies " +
                       label_str(b) + " with the exchangeable image of " +
                       label_str(k) +
                       "; no rooted cluster morphism induces this");
    }
  }

  AcsMorphism mor;
  mor.src = acs_from_seed(m.source, depth);
  mor.dst = acs_from_seed(m.target, depth);
  const AcsTruncation& src = mor.src;
  const AcsTruncation& dst = mor.dst;

  std::vector<std::vector<std::size_t>> outgoing(src.vertices.size());
  for (std::size_t i = 0; i < src.edges.size(); ++i)
    outgoing[src.edges[i].src].push_back(i);

  struct NodeState {
    std::size_t tgt = 0;
    std::map<Label, Label> phi;
  };
  std::vector<std::optional<NodeState>> state(src.vertices.size());
  const std::size_t root = src.vertex_index(src.root);
  state[root] = NodeState{dst.vertex_index(dst.root), m.phi};
  std::deque<std::size_t> queue{root};
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    const NodeState& st = *state[at];
    for (std::size_t ei : outgoing[at]) {
      const AcsEdge& e = src.edges[ei];
      auto [k, fresh1] =
          edge_direction(src.vertices[e.src], src.vertices[e.dst]);
      auto it = st.phi.find(k);
      if (it == st.phi.end()) {
        mor.f_edge[e.id] = {};
        if (!state[e.dst]) {
          state[e.dst] = NodeState{
              st.tgt, step_phi(st.phi, k, fresh1, std::nullopt, std::nullopt)};
          queue.push_back(e.dst);
        }
        continue;
      }
      const Label img = it->second;
      const AcsEdge* te = nullptr;
      Label fresh2;
      for (std::size_t tj = 0; tj < dst.edges.size(); ++tj) {
        if (dst.edges[tj].src != st.tgt) continue;
        auto [tk, trepl] = edge_direction(dst.vertices[dst.edges[tj].src],
                                          dst.vertices[dst.edges[tj].dst]);
        if (tk == img) {
          te = &dst.edges[tj];
          fresh2 = trepl;
          break;
        }
      }
      if (!te)
        throw Internal("induced_acs_morphism: no target edge in direction '" +
                       label_str(img) + "' from " + dst.vertices[st.tgt].id);
      mor.f_edge[e.id] = {te->id};
      if (!state[e.dst]) {
        state[e.dst] =
            NodeState{te->dst, step_phi(st.phi, k, fresh1, img, fresh2)};
        queue.push_back(e.dst);
      }
    }
  }

  for (std::size_t i = 0; i < src.vertices.size(); ++i) {
    if (!state[i])
      throw Internal("induced_acs_morphism: unreachable source vertex " +
                     src.vertices[i].id);
    const AcsVertex& sv = src.vertices[i];
    const AcsVertex& tv = dst.vertices[state[i]->tgt];
    const auto& phi = state[i]->phi;
    mor.f_obj[sv.id] = tv.id;
    std::map<Label, LatticeElement> chi_cols, alpha_cols;
    for (const Label& x : sv.x_basis->labels()) {
      auto it = phi.find(x);
      chi_cols.emplace(x, it == phi.end()
                              ? lat_zero(tv.x_basis)
                              : lat_unit(tv.x_basis, it->second));
    }
    for (const Label& d : sv.a_basis->labels()) {
      auto it = phi.find(primal(d.text));
      alpha_cols.emplace(d, it == phi.end()
                                ? lat_zero(tv.a_basis)
                                : lat_unit(tv.a_basis, dual_of(it->second)));
    }
    mor.chi.emplace(sv.id, make_map(sv.x_basis, tv.x_basis, std::move(chi_cols)));
    mor.alpha.emplace(sv.id,
                      make_map(sv.a_basis, tv.a_basis, std::move(alpha_cols)));
  }
  return mor;
}

namespace {

// Laurent polynomial with rational coefficients, keyed by label exponents.
using RatLaurent = std::map<std::map<Label, Int>, Rat>;

Rat rat_pow(const Int& base, const Int& e) {
  if (base == 0 && e < 0) throw BadInput("specialisation value 0 inverted");
  Rat out(1);
  Rat b = e < 0 ? Rat(1, base) : Rat(base);
  for (Int i = 0; i < abs(e); ++i) out *= b;
  return out;
}

void add_term(RatLaurent& sum, std::map<Label, Int> mono, const Rat& coeff) {
  for (auto it = mono.begin(); it != mono.end();)
    it = it->second == 0 ? mono.erase(it) : std::next(it);
  auto [it, inserted] = sum.emplace(std::move(mono), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) sum.erase(it);
  }
}

// The substitution homomorphism on the source initial torus: b^* goes to
// phi(b)^* when phi(b) != 0 and to the specialisation constant otherwise.
RatLaurent substitute(const ExAdmissibleMap& m, const QLaurent& v) {
  RatLaurent out;
  const auto& duals = v.ctx->basis->labels();
  for (const auto& [e, qc] : v.terms) {
    Rat coeff(qc_at_one(qc));
    std::map<Label, Int> mono;
    bool dropped = false;
    for (std::size_t i = 0; i < duals.size(); ++i) {
      if (e[i] == 0) continue;
      Label b = primal(duals[i].text);
      auto img = phi_image(m, b);
      if (img) {
        mono[dual_of(*img)] += e[i];
      } else {
        Int val = specialize_value(m, b);
        if (val == 0 && e[i] > 0) {
          dropped = true;
          break;
        }
        coeff *= rat_pow(val, e[i]);
      }
    }
    if (!dropped && coeff != 0) add_term(out, std::move(mono), coeff);
  }
  return out;
}

RatLaurent embed(const QLaurent& v) {
  RatLaurent out;
  const auto& duals = v.ctx->basis->labels();
  for (const auto& [e, qc] : v.terms) {
    std::map<Label, Int> mono;
    for (std::size_t i = 0; i < duals.size(); ++i)
      if (e[i] != 0) mono[duals[i]] = e[i];
    add_term(out, std::move(mono), Rat(qc_at_one(qc)));
  }
  return out;
}

}  // namespace

VarLevelReport verify_variable_level(const ExAdmissibleMap& m,
                                     std::size_t depth) {
  if (m.source.lambda || m.target.lambda)
    throw BadInput("verify_variable_level: commutative seeds only");
  auto bad = validate_ex_admissible(m);
  if (!bad.empty())
    throw BadInput("verify_variable_level: " + bad.front().rule + ": " +
                   bad.front().detail);

  VarLevelReport rep;
  struct VState {
    Frame f1, f2;
    std::map<Label, Label> phi;
  };
  auto recurse = [&](auto&& self, const VState& st,
                     std::size_t depth_left) -> void {
    for (const auto& [b, c] : st.phi) {
      ++rep.checked;
      RatLaurent lhs = substitute(m, st.f1.vars.at(dual_of(b)));
      RatLaurent rhs = embed(st.f2.vars.at(dual_of(c)));
      if (lhs != rhs)
        rep.failures.push_back(
            {path_str(st.f1.path), b,
             "substituted source variable differs from target variable at '" +
                 label_str(c) + "'"});
    }
    if (depth_left == 0) return;
    for (const Label& k : st.f1.seed.ex_basis->labels()) {
      if (st.f1.arrived_by && k == *st.f1.arrived_by) continue;
      Frame nf1 = mutate_frame(st.f1, k);
      const Label fresh1 = *nf1.arrived_by;
      auto it = st.phi.find(k);
      std::optional<Label> img, fresh2;
      Frame nf2 = st.f2;
      if (it != st.phi.end()) {
        img = it->second;
        nf2 = mutate_frame(st.f2, *img);
        fresh2 = nf2.arrived_by;
      }
      VState next{std::move(nf1), std::move(nf2),
                  step_phi(st.phi, k, fresh1, img, fresh2)};
      self(self, next, depth_left - 1);
    }
  };
  VState root{root_frame(m.source), root_frame(m.target), m.phi};
  recurse(recurse, root, depth);
  return rep;
}

ExAdmissibleMap rcm_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    ExAdmissibleMap m;
    m.source = seed_from_json(j.at("source").dump());
    m.target = seed_from_json(j.at("target").dump());
    for (const auto& [key, val] : j.at("phi").items()) {
      if (val.is_null()) continue;
      m.phi.emplace(parse_label(key), parse_label(val.get<std::string>()));
    }
    if (j.count("specialize"))
      for (const auto& [key, val] : j.at("specialize").items())
        m.specialize.emplace(parse_label(key), int_from_json(val));
    auto bad = validate_ex_admissible(m);
    if (!bad.empty())
      throw BadInput("rcm_from_json: " + bad.front().rule + ": " +
                     bad.front().detail);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("rcm_from_json: ") + e.what());
  }
}

std::string rcm_to_json(const ExAdmissibleMap& m) {
  nlohmann::json j;
  j["source"] = nlohmann::json::parse(seed_to_json(m.source));
  j["target"] = nlohmann::json::parse(seed_to_json(m.target));
  nlohmann::json phi = nlohmann::json::object();
  for (const Label& b : m.source.basis->labels()) {
    auto it = m.phi.find(b);
    if (it == m.phi.end())
      phi[label_str(b)] = nullptr;
    else
      phi[label_str(b)] = label_str(it->second);
  }
  j["phi"] = std::move(phi);
  nlohmann::json spec = nlohmann::json::object();
  for (const auto& [b, val] : m.specialize) spec[label_str(b)] = json_int(val);
  j["specialize"] = std::move(spec);
  return j.dump(2);
}

}  // namespace qcl
