#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weilcliff/algebra.hpp"

namespace weilcliff {

// Odd or even operator, either extended from generator images by the
// super-Leibniz rule (commutative even part only) or inner, ad(D).
struct Derivation {
  const AlgebraContext* ctx = nullptr;
  int parity = 1;
  std::string name;
  std::vector<Element> even_images, odd_images;
  std::optional<Element> inner;

  Element apply(const Element& x) const;
  Element operator()(const Element& x) const { return apply(x); }
};

struct OperatorCertificate {
  std::string relation;
  bool ok = true;
  int bound = 0;
  std::string witness;   // first failing word, pretty-printed
  std::string residual;  // pretty-printed residual at the witness
};

struct StandardOperators {
  const AlgebraContext* ctx = nullptr;
  const LieAlgebraData* lie = nullptr;
  Derivation d;
  std::optional<Derivation> dprime;
  std::vector<Derivation> iota;  // iota(e_i) per basis index
  std::vector<Derivation> lieL;  // L(e_i) per basis index
  std::map<int, Rat> xi;         // requested deformation, basis coordinates
  std::map<int, Rat> eta;        // effective inner deformation vector (quantized)
  Element dirac;                 // quantized flavors only
  std::vector<Element> g_elems;  // quantized flavors only
  std::vector<OperatorCertificate> certificates;

  Derivation iota_of(const std::map<int, Rat>& x) const;
  Derivation lie_of(const std::map<int, Rat>& x) const;
  const Derivation& differential() const { return dprime ? *dprime : d; }
};

// Builds d, d', iota(.), L(.) for the given flavor and certifies the bracket
// relations on basis_window(cert_bound). Throws CertificateFailure if any
// relation has a nonzero residual. xi may be empty for undeformed runs;
// nonzero entries must sit on Cartan indices.
StandardOperators standard_operators(const AlgebraContext& ctx, const LieAlgebraData* L,
                                     const std::map<int, Rat>& xi, int cert_bound = 6);

// Runs the relation checks without throwing; used by reports and tests.
std::vector<OperatorCertificate> certify_operators(const StandardOperators& ops, int bound);

// Basis of the joint kernel of L(h) over Cartan h (or of L(xi) alone) inside
// basis_window(bound). The span is certified d'-stable via L(h) d'(v) = 0.
std::vector<Element> invariant_window(const AlgebraContext& ctx, const StandardOperators& ops,
                                      int bound, bool xi_only = false);

}  // namespace weilcliff
