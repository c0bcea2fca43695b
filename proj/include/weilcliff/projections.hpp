#pragma once

#include <functional>

#include "weilcliff/algebra.hpp"
#include "weilcliff/cohomology.hpp"
#include "weilcliff/lie.hpp"

namespace weilcliff {

// Index data of the Cartan-restricted target algebra.
struct CartanTarget {
  std::vector<int> idx;  // target position -> source basis index
  std::vector<std::string> names;
  std::vector<std::vector<Rat>> form;  // B restricted to the Cartan block
};
CartanTarget cartan_target(const LieAlgebraData& L);

// Chevalley projection inside Sg: kills every monomial containing an npos or
// nneg index, keeps the index space.
Element chevalley_project_sym(const AlgebraContext& sym, const LieAlgebraData& L,
                              const Element& x);

// Chevalley projection onto the Cartan target context (Sg -> Sh, /\g -> /\h,
// W(g) -> K(h)); an algebra homomorphism.
Element chevalley_restrict(const AlgebraContext& src, const AlgebraContext& dst,
                           const LieAlgebraData& L, const Element& x);

// Harish-Chandra projection on Ug: kappa keeps pure-Cartan PBW words, then the
// rho-shift substitutes h -> h - rho(h). Result lives in the full symmetric
// context with support on Cartan variables.
Element harish_chandra_project_env(const AlgebraContext& env, const AlgebraContext& sym,
                                   const LieAlgebraData& L, const CartanFunctional& rho,
                                   const Element& x);

// Harish-Chandra projection W(g) -> K(h, B_h): kappa on both tensor legs, the
// rho-shift on the enveloping side only.
Element harish_chandra_restrict(const AlgebraContext& src, const AlgebraContext& dst,
                                const LieAlgebraData& L, const CartanFunctional& rho,
                                const Element& x);

struct IsoReport {
  bool ok = true;
  std::string detail;  // first failing degree/level
};

// Checks that the projection induces an isomorphism in cohomology: dimensions
// agree per degree (graded) or per stable level (filtered), and projected
// source representatives are cohomologous to a basis of the target classes.
IsoReport verify_induced_iso(const CohomologyComputation& src, const CohomologyReport& src_rep,
                             const CohomologyComputation& dst, const CohomologyReport& dst_rep,
                             const std::function<Element(const Element&)>& project);

}  // namespace weilcliff
