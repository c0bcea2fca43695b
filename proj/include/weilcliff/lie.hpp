#pragma once

#include <map>
#include <string>
#include <vector>

#include "weilcliff/linalg.hpp"
#include "weilcliff/rational.hpp"

namespace weilcliff {

// Structure constants, invariant form and triangular decomposition of a
// reductive Lie algebra, validated on load. Value-semantic and immutable
// after load_lie_algebra; safe to share across threads read-only.
struct LieAlgebraData {
  std::string name;
  std::vector<std::string> basis_names;
  int dim = 0;
  // brackets[a][b] = sparse vector of coefficients of [e_a, e_b] in the basis
  std::vector<std::vector<std::map<int, Rat>>> brackets;
  std::vector<std::vector<Rat>> form;  // B_g
  std::vector<int> cartan_indices, npos_indices, nneg_indices, center_indices;

  // PBW order: nneg block, then cartan, then npos; input order within blocks.
  std::vector<int> pbw_order;              // position -> basis index
  std::vector<int> pbw_pos;                // basis index -> position
  std::vector<std::map<int, Rat>> dual;    // dual[a] = e^a with B(e^a, e_b) = delta_ab

  const std::map<int, Rat>& bracket(int a, int b) const { return brackets[a][b]; }
  bool is_cartan(int i) const;
  std::map<int, Rat> bracket_vec(const std::map<int, Rat>& x, int b) const;
};

// Functional on the Cartan subalgebra, defined exactly on cartan_indices.
struct CartanFunctional {
  std::map<int, Rat> values;
};

// Parses the structured-text document (JSON) and verifies every invariant:
// antisymmetry, Jacobi, symmetry/nondegeneracy/invariance of the form, and
// consistency of the triangular decomposition. Throws ParseError or
// ValidationError (with the witnessing triple) on failure.
LieAlgebraData load_lie_algebra(const std::string& json_text);
LieAlgebraData load_lie_algebra_file(const std::string& path);

// e^a with B(e^a, e_b) = delta_ab, as coefficient vectors over the basis.
std::vector<std::vector<Rat>> dual_basis(const LieAlgebraData& L);

// rho(h) = 1/2 tr(ad h | npos span). Requires each npos basis vector to be an
// eigenvector of every ad(h); throws NotDiagonal otherwise.
CartanFunctional rho(const LieAlgebraData& L);

}  // namespace weilcliff
