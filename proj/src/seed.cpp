#include "cluster/seed.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cluster/errors.hpp"
#include "cluster/jsonio.hpp"
#include "cluster/smith.hpp"

namespace qcl {

Seed make_seed(BasisPtr basis, std::vector<Label> ex, std::vector<Label> inv,
               LinearMap beta, std::optional<LinearMap> lambda) {
  std::set<Label> ex_set(ex.begin(), ex.end());
  if (ex_set.size() != ex.size()) throw BadInput("make_seed: duplicate ex label");
  for (const Label& l : ex)
    if (!basis->contains(l))
      throw BadInput("make_seed: ex label not in basis: " + label_str(l));
  for (const Label& l : inv) {
    if (!basis->contains(l))
      throw BadInput("make_seed: inv label not in basis: " + label_str(l));
    if (ex_set.count(l))
      throw BadInput("make_seed: inv label is mutable: " + label_str(l));
  }
  // ex sub-basis in epsilon order.
  std::vector<Label> ex_ordered;
  for (const Label& l : basis->labels())
    if (ex_set.count(l)) ex_ordered.push_back(l);
  BasisPtr ex_basis = make_basis(std::move(ex_ordered));
  if (!same_basis(beta.domain, ex_basis))
    throw BadInput("make_seed: beta domain is not Z[ex]");
  if (!same_basis(beta.codomain, dual_basis(basis)))
    throw BadInput("make_seed: beta codomain is not Z[B]^*");
  if (lambda) {
    if (!same_basis(lambda->domain, dual_basis(basis)) ||
        !same_basis(lambda->codomain, basis))
      throw BadInput("make_seed: lambda is not a map Z[B]^* -> Z[B]");
  }
  return Seed{std::move(basis), std::move(ex_basis), std::move(inv),
              std::move(beta), std::move(lambda)};
}

std::vector<Violation> validate(const Seed& seed) {
  std::vector<Violation> out;
  const auto& ex = seed.ex_basis->labels();

  // Principal form skew-symmetric: <k,l> = -<l,k> on ex x ex.
  for (std::size_t i = 0; i < ex.size(); ++i)
    for (std::size_t j = i; j < ex.size(); ++j) {
      Int a = eval_pairing(seed.beta.columns.at(ex[i]),
                           lat_unit(seed.basis, ex[j]));
      Int b = eval_pairing(seed.beta.columns.at(ex[j]),
                           lat_unit(seed.basis, ex[i]));
      if (a != -b)
        out.push_back({"beta-principal-skew",
                       "<" + label_str(ex[i]) + "," + label_str(ex[j]) +
                           ">_beta = " + a.str() + " but <" + label_str(ex[j]) +
                           "," + label_str(ex[i]) + ">_beta = " + b.str()});
    }

  if (seed.lambda) {
    Mat l = map_matrix(*seed.lambda);
    const std::size_t n = seed.basis->rank();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (l[i][j] != -l[j][i]) {
          out.push_back({"lambda-skew",
                         "lambda matrix entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") breaks skew-symmetry"});
          j = n;  // one witness per row is enough
        }

    // Compatibility <lambda(b*), beta(k)> = delta_{bk} on all of B x ex.
    for (const Label& b : seed.basis->labels()) {
      LatticeElement lb = map_apply(*seed.lambda,
                                    lat_unit(seed.lambda->domain, dual_of(b)));
      for (const Label& k : ex) {
        Int v = eval_pairing(seed.beta.columns.at(k), lb);
        Int want = (b == k) ? 1 : 0;
        if (v != want)
          out.push_back({"compatibility",
                         "<lambda(" + label_str(dual_of(b)) + "), beta(" +
                             label_str(k) + ")> = " + v.str() + ", expected " +
                             want.str()});
      }
    }

    std::vector<Int> inv = smith_invariants(beta_matrix(seed));
    if (inv.size() != ex.size())
      out.push_back({"beta-injective",
                     "beta has rank " + std::to_string(inv.size()) + " < |ex| = " +
                         std::to_string(ex.size())});
  }
  return out;
}

bool is_valid(const Seed& seed) { return validate(seed).empty(); }

Mat beta_matrix(const Seed& seed) { return map_matrix(seed.beta); }

Mat beta_gram(const Seed& seed) { return mat_transpose(beta_matrix(seed)); }

Mat lambda_matrix(const Seed& seed) {
  if (!seed.lambda) throw BadInput("lambda_matrix: seed has no lambda");
  return map_matrix(*seed.lambda);
}

Label fresh_label(const Seed& seed, const Label& k,
                  const std::vector<Label>& path) {
  if (k.dual) throw BadInput("fresh_label: direction must be primal");
  std::size_t step = path.size() + 1;
  for (;;) {
    Label cand{k.text + "|" + std::to_string(step), false};
    if (!seed.basis->contains(cand)) return cand;
    ++step;
  }
}

namespace {

// New basis = old basis with k replaced by `fresh` at the same position.
BasisPtr replace_label(const BasisPtr& basis, const Label& k,
                       const Label& fresh) {
  std::vector<Label> labels = basis->labels();
  labels[basis->index_of(k)] = fresh;
  return make_basis(std::move(labels));
}

// F_eps: Z[B] -> Z[muB], b |-> b + <[beta(k)]_eps, b> k' and k |-> -k'.
LinearMap build_f(const BasisPtr& old_b, const BasisPtr& new_b, const Label& k,
                  const Label& fresh, const LatticeElement& beta_part) {
  std::map<Label, LatticeElement> cols;
  for (const Label& b : old_b->labels()) {
    if (b == k) {
      cols.emplace(k, lat_neg(lat_unit(new_b, fresh)));
      continue;
    }
    LatticeElement col = lat_unit(new_b, b);
    Int c = lat_coeff(beta_part, dual_of(b));
    if (c != 0) col = lat_add(col, lat_scale(c, lat_unit(new_b, fresh)));
    cols.emplace(b, std::move(col));
  }
  return make_map(old_b, new_b, std::move(cols));
}

}  // namespace

MutationMaps mutation_maps(const Seed& seed, const Label& k,
                           const Label& fresh) {
  if (!seed.ex_basis->contains(k))
    throw BadInput("mutation_maps: direction not mutable: " + label_str(k));
  if (seed.basis->contains(fresh))
    throw BadInput("mutation_maps: fresh label already present: " +
                   label_str(fresh));
  BasisPtr old_b = seed.basis;
  BasisPtr new_b = replace_label(old_b, k, fresh);
  auto [bp, bm] = pos_neg_parts(seed.beta.columns.at(k));

  MutationMaps m{k, fresh, old_b, new_b, {}, {}, {}, {}, {}, {}, {}, {}};
  m.f_plus = build_f(old_b, new_b, k, fresh, bp);
  m.f_minus = build_f(old_b, new_b, k, fresh, bm);
  // The inverse maps have the same shape with the roles of k and k' swapped.
  LatticeElement bp_new = lat_restrict(bp, dual_basis(new_b));
  LatticeElement bm_new = lat_restrict(bm, dual_basis(new_b));
  m.fi_plus = build_f(new_b, old_b, fresh, k, bp_new);
  m.fi_minus = build_f(new_b, old_b, fresh, k, bm_new);
  // E-maps are the adjoints of the F-inverses (and vice versa).
  m.e_plus = map_dual(m.fi_plus);
  m.e_minus = map_dual(m.fi_minus);
  m.ei_plus = map_dual(m.f_plus);
  m.ei_minus = map_dual(m.f_minus);
  return m;
}

LinearMap mutate_beta_signed(const Seed& seed, const MutationMaps& maps,
                             bool plus) {
  // New ex = old ex with k replaced by the fresh label, in basis order.
  std::vector<Label> new_ex;
  for (const Label& l : maps.new_basis->labels())
    if (seed.ex_basis->contains(l) || l == maps.fresh) new_ex.push_back(l);
  BasisPtr new_ex_basis = make_basis(std::move(new_ex));

  const LinearMap& fi = plus ? maps.fi_plus : maps.fi_minus;
  const LinearMap& e = plus ? maps.e_plus : maps.e_minus;
  std::map<Label, LatticeElement> cols;
  for (const Label& l : new_ex_basis->labels()) {
    LatticeElement down = lat_restrict(fi.columns.at(l), seed.ex_basis);
    cols.emplace(l, map_apply(e, map_apply(seed.beta, down)));
  }
  return make_map(new_ex_basis, dual_basis(maps.new_basis), std::move(cols));
}

LinearMap mutate_beta(const Seed& seed, const MutationMaps& maps) {
  return mutate_beta_signed(seed, maps, true);
}

LinearMap mutate_lambda_signed(const Seed& seed, const MutationMaps& maps,
                               bool plus) {
  if (!seed.lambda) throw BadInput("mutate_lambda: seed has no lambda");
  const LinearMap& f = plus ? maps.f_plus : maps.f_minus;
  const LinearMap& ei = plus ? maps.ei_plus : maps.ei_minus;
  return map_compose(f, map_compose(*seed.lambda, ei));
}

LinearMap mutate_lambda(const Seed& seed, const MutationMaps& maps) {
  return mutate_lambda_signed(seed, maps, true);
}

MutationResult mutate_seed(const Seed& seed, const Label& k,
                           const Label& fresh) {
  MutationMaps maps = mutation_maps(seed, k, fresh);
  LinearMap new_beta = mutate_beta(seed, maps);
  std::optional<LinearMap> new_lambda;
  if (seed.lambda) new_lambda = mutate_lambda(seed, maps);
  std::vector<Label> new_ex = new_beta.domain->labels();
  Seed out = make_seed(maps.new_basis, std::move(new_ex), seed.inv,
                       std::move(new_beta), std::move(new_lambda));
  return {std::move(out), std::move(maps)};
}

MutationResult mutate_seed(const Seed& seed, const Label& k,
                           const std::vector<Label>& path) {
  return mutate_seed(seed, k, fresh_label(seed, k, path));
}

bool check_involution(const Seed& seed, const Label& k) {
  MutationResult first = mutate_seed(seed, k);
  MutationResult second =
      mutate_seed(first.seed, first.maps.fresh,
                  fresh_label(first.seed, first.maps.fresh, {k}));
  const Seed& twice = second.seed;

  // nu identifies the twice-mutated basis with the original positionally
  // (only position of k changed labels, and it changed back in spirit).
  LinearMap beta_back =
      map_recast(twice.beta, seed.ex_basis, dual_basis(seed.basis));
  if (!map_equal(beta_back, seed.beta)) return false;
  if (seed.lambda) {
    LinearMap lambda_back =
        map_recast(*twice.lambda, dual_basis(seed.basis), seed.basis);
    if (!map_equal(lambda_back, *seed.lambda)) return false;
  }
  // ex and inv correspond positionally by construction; inv is untouched.
  if (twice.inv != seed.inv) return false;
  return twice.ex_basis->rank() == seed.ex_basis->rank();
}

Int x_form(const Seed& seed, const LatticeElement& x, const LatticeElement& y) {
  return eval_pairing(map_apply(seed.beta, x), lat_extend(y, seed.basis));
}

Int a_form(const Seed& seed, const LatticeElement& a, const LatticeElement& b) {
  if (!seed.lambda) throw BadInput("a_form: seed has no lambda");
  return eval_pairing(b, map_apply(*seed.lambda, a));
}

Retraction find_retraction(const Seed& seed) {
  const std::size_t n = seed.basis->rank();
  const std::size_t m = seed.ex_basis->rank();
  Mat bt = beta_matrix(seed);  // rows B, cols ex

  std::vector<Int> inv = smith_invariants(bt);
  bool split_mono = inv.size() == m;
  for (const Int& d : inv)
    if (d != 1) split_mono = false;
  if (!split_mono)
    throw NoRetraction(
        "beta is not a split monomorphism (some invariant factor differs "
        "from 1); no retraction and no compatible lambda exist");

  // Unknowns: entries L[i][j] for i < j of a skew matrix L (columns of
  // lambda in basis order).  Equations: (B^T L)[k][b] = delta_{kb}.
  const std::size_t unknowns = n * (n - 1) / 2;
  auto var_index = [n](std::size_t i, std::size_t j) {
    // i < j; row-major over the strict upper triangle
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  };
  Mat sys = mat_zero(m * n, unknowns);
  std::vector<Int> rhs(m * n, 0);
  for (std::size_t kk = 0; kk < m; ++kk) {
    std::size_t k_pos = seed.basis->index_of(seed.ex_basis->labels()[kk]);
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t row = kk * n + b;
      rhs[row] = (b == k_pos) ? 1 : 0;
      // sum_c bt[c][kk] * L[c][b]
      for (std::size_t c = 0; c < n; ++c) {
        if (bt[c][kk] == 0 || c == b) continue;
        if (c < b)
          sys[row][var_index(c, b)] += bt[c][kk];
        else
          sys[row][var_index(b, c)] -= bt[c][kk];
      }
    }
  }
  auto sol = solve(sys, rhs);
  if (!sol)
    throw NoRetraction(
        "beta is a split monomorphism, but the skew compatibility system has "
        "no integral solution; this seed admits no quantization");

  Mat l = mat_zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      l[i][j] = (*sol)[var_index(i, j)];
      l[j][i] = -l[i][j];
    }
  LinearMap lambda = map_from_matrix(dual_basis(seed.basis), seed.basis, l);
  // rho = pi_ex o lambda^T: row k of L^T = column k of L.
  Mat rho_m = mat_zero(m, n);
  for (std::size_t kk = 0; kk < m; ++kk) {
    std::size_t k_pos = seed.basis->index_of(seed.ex_basis->labels()[kk]);
    for (std::size_t b = 0; b < n; ++b) rho_m[kk][b] = l[b][k_pos];
  }
  LinearMap rho = map_from_matrix(dual_basis(seed.basis), seed.ex_basis, rho_m);
  return {std::move(rho), std::move(lambda)};
}

FundamentalGroup fundamental_group(const Seed& seed) {
  FundamentalGroup g;
  g.invariants = smith_invariants(beta_matrix(seed));
  g.free_rank = seed.basis->rank() - g.invariants.size();
  return g;
}

std::string fg_str(const FundamentalGroup& g) {
  std::vector<std::string> parts;
  if (g.free_rank == 1) parts.push_back("Z");
  if (g.free_rank > 1) parts.push_back("Z^" + std::to_string(g.free_rank));
  for (const Int& d : g.invariants)
    if (d != 1) parts.push_back("Z/" + d.str());
  if (parts.empty()) return "trivial";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " x ";
    out += parts[i];
  }
  return out;
}

Seed seed_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw BadInput(std::string("seed JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw BadInput("seed JSON: expected an object");
  for (const char* key : {"labels", "ex", "beta_columns"})
    if (!j.contains(key))
      throw BadInput(std::string("seed JSON: missing field '") + key + "'");

  auto label_list = [](const nlohmann::json& arr,
                       const char* what) -> std::vector<Label> {
    if (!arr.is_array())
      throw BadInput(std::string("seed JSON: '") + what + "' must be an array");
    std::vector<Label> out;
    for (const auto& s : arr) {
      if (!s.is_string())
        throw BadInput(std::string("seed JSON: '") + what +
                       "' entries must be strings");
      out.push_back(parse_label(s.get<std::string>()));
    }
    return out;
  };

  std::vector<Label> labels =
      label_list(j.contains("order") ? j["order"] : j["labels"], "labels");
  BasisPtr basis = make_basis(labels);
  std::vector<Label> ex = label_list(j["ex"], "ex");
  std::vector<Label> inv;
  if (j.contains("inv")) inv = label_list(j["inv"], "inv");

  std::set<Label> ex_set(ex.begin(), ex.end());
  std::vector<Label> ex_ordered;
  for (const Label& l : labels)
    if (ex_set.count(l)) ex_ordered.push_back(l);
  if (ex_ordered.size() != ex.size())
    throw BadInput("seed JSON: 'ex' is not a subset of 'labels'");
  BasisPtr ex_basis = make_basis(ex_ordered);
  BasisPtr dual = dual_basis(basis);

  const auto& bc = j["beta_columns"];
  if (!bc.is_object())
    throw BadInput("seed JSON: 'beta_columns' must be an object");
  std::map<Label, LatticeElement> beta_cols;
  for (const Label& k : ex_ordered) {
    if (!bc.contains(k.text))
      throw BadInput("seed JSON: beta_columns missing '" + k.text + "'");
    LatticeElement col = lat_zero(dual);
    for (const auto& [b_text, v] : bc[k.text].items()) {
      Label b = dual_of(parse_label(b_text));
      if (!dual->contains(b))
        throw BadInput("seed JSON: beta_columns refers to unknown label '" +
                       b_text + "'");
      Int c = int_from_json(v);
      if (c != 0) col.coords.emplace(b, c);
    }
    beta_cols.emplace(k, std::move(col));
  }
  LinearMap beta = make_map(ex_basis, dual, std::move(beta_cols));

  std::optional<LinearMap> lambda;
  if (j.contains("lambda_columns") && !j["lambda_columns"].is_null()) {
    const auto& lc = j["lambda_columns"];
    if (!lc.is_object())
      throw BadInput("seed JSON: 'lambda_columns' must be an object");
    std::map<Label, LatticeElement> cols;
    for (const Label& b : labels) {
      LatticeElement col = lat_zero(basis);
      if (lc.contains(b.text)) {
        for (const auto& [c_text, v] : lc[b.text].items()) {
          Label c = parse_label(c_text);
          if (!basis->contains(c))
            throw BadInput("seed JSON: lambda_columns refers to unknown label '" +
                           c_text + "'");
          Int cv = int_from_json(v);
          if (cv != 0) col.coords.emplace(c, cv);
        }
      }
      cols.emplace(dual_of(b), std::move(col));
    }
    lambda = make_map(dual, basis, std::move(cols));
  }

  return make_seed(basis, ex, inv, std::move(beta), std::move(lambda));
}

std::string seed_to_json(const Seed& seed) {
  nlohmann::json j;
  nlohmann::json labels = nlohmann::json::array();
  for (const Label& l : seed.basis->labels()) labels.push_back(l.text);
  j["labels"] = labels;
  j["order"] = labels;
  nlohmann::json ex = nlohmann::json::array();
  for (const Label& l : seed.ex_basis->labels()) ex.push_back(l.text);
  j["ex"] = ex;
  nlohmann::json inv = nlohmann::json::array();
  for (const Label& l : seed.inv) inv.push_back(l.text);
  j["inv"] = inv;

  nlohmann::json bc = nlohmann::json::object();
  for (const Label& k : seed.ex_basis->labels()) {
    nlohmann::json col = nlohmann::json::object();
    for (const auto& [b, c] : seed.beta.columns.at(k).coords)
      col[b.text] = json_int(c);
    bc[k.text] = col;
  }
  j["beta_columns"] = bc;

  if (seed.lambda) {
    nlohmann::json lc = nlohmann::json::object();
    for (const Label& b : seed.basis->labels()) {
      nlohmann::json col = nlohmann::json::object();
      for (const auto& [c, v] : seed.lambda->columns.at(dual_of(b)).coords)
        col[c.text] = json_int(v);
      lc[b.text] = col;
    }
    j["lambda_columns"] = lc;
  }
  return j.dump(2) + "\n";
}

}  // namespace qcl
