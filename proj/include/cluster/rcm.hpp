#pragma once

// Rooted cluster morphism machinery: ex-admissible label maps phi between
// two seeds, the pushforward of admissible mutation sequences F(k) together
// with the mutated label maps phi_k (a simultaneous recursion), the
// consistently-positive sign analysis of phi against beta, the induced
// morphism of truncated abstract cluster structures, and the variable-level
// check that the substitution homomorphism commutes with mutation.
//
// A 0-image models specialisation of the variable to an integer; such
// directions are contracted by F and carry a specialisation value (1 unless
// stated otherwise).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cluster/acscat.hpp"
#include "cluster/seed.hpp"

namespace qcl {

struct ExAdmissibleMap {
  Seed source, target;
  // b -> phi(b) for the labels with non-zero image; a source basis label
  // absent from the map is sent to 0 (specialised).
  std::map<Label, Label> phi;
  // Specialisation values for the 0-labels; absent entries default to 1.
  std::map<Label, Int> specialize;
};

// phi(b), with nullopt standing for 0.  b must be a source basis label.
std::optional<Label> phi_image(const ExAdmissibleMap& m, const Label& b);

// phi(0) = 0 is built into the representation; checks that keys are source
// labels, images are target labels, mutable labels land in ex or 0, and
// specialisation values are attached to 0-labels only.
std::vector<Violation> validate_ex_admissible(const ExAdmissibleMap& m);
bool is_ex_admissible(const ExAdmissibleMap& m);

struct PushResult {
  std::vector<Label> f_seq;  // F(k), target directions, oldest first
  ExAdmissibleMap pushed;    // phi_k between the two mutated seeds
};

// Mutates the source along `seq` (oldest first) and the target along the
// induced sequence, carrying phi through each step; throws BadInput when
// `seq` is not admissible for the source.
PushResult push_sequence(const ExAdmissibleMap& m,
                         const std::vector<Label>& seq);

enum class SignVerdict { Positive, Negative, Mixed };

struct ComponentSign {
  std::vector<Label> members;  // mutable labels of one exchange-quiver component
  // '+' / '-': phi^* o beta_1 = +/- beta_2 o phi on the component;
  // '0': no constrained direction; 'x': no single sign works.
  char sign = '0';
};

struct SignReport {
  SignVerdict verdict = SignVerdict::Positive;
  std::vector<ComponentSign> components;
};

// Compares phi^*(beta_1(k)) with +/- beta_2(phi(k)) over every mutable k
// with phi(k) != 0; signs are aggregated per connected component of the
// exchange quiver and into a global verdict.
SignReport consistently_positive(const ExAdmissibleMap& m);

// The morphism (F, chi, alpha) between the depth-truncations of the two
// exchange trees: F contracts edges in specialised directions, chi and
// alpha are the linearisations of phi_k at each vertex.  Throws Unsupported
// for a consistently negative phi and BadInput for a mixed one.
AcsMorphism induced_acs_morphism(const ExAdmissibleMap& m, std::size_t depth);

struct VarLevelFailure {
  std::string path;  // source vertex where the comparison failed
  Label label;       // source label (current cluster) being compared
  std::string detail;
};

struct VarLevelReport {
  std::size_t checked = 0;
  std::vector<VarLevelFailure> failures;
  bool pass() const { return failures.empty(); }
};

// Extends phi to a substitution on the initial torus (0-labels become their
// specialisation values) and checks, over all admissible sequences of length
// <= depth and all labels with phi_k != 0, that substituting the source
// cluster variable gives the target cluster variable.  Commutative seeds
// only; coefficients are tracked over Q so negative powers of specialisation
// values stay exact.
VarLevelReport verify_variable_level(const ExAdmissibleMap& m,
                                     std::size_t depth);

// {"source": seed, "target": seed, "phi": {label: label|null},
//  "specialize": {label: int}}
ExAdmissibleMap rcm_from_json(const std::string& text);
std::string rcm_to_json(const ExAdmissibleMap& m);

}  // namespace qcl
