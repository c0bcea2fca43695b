#pragma once

#include "weilcliff/derivations.hpp"

namespace weilcliff {

// Contraction-style homotopy for the acyclic flavors. Internally works in the
// shifted variables: u_a = sgen_a - xi^a for Koszul flavors, z~_a = d(egen_a) - xi^a
// for the Weil flavor. [d, h] = id - i.pi on every window word (certified).
struct HomotopyOperator {
  const AlgebraContext* ctx = nullptr;
  std::map<int, Rat> xi;
  std::vector<Element> even_shift_images;    // sgen_a expressed in shifted variables
  std::vector<Element> even_unshift_images;  // shifted generator expressed back

  Element to_shifted(const Element& x) const;
  Element from_shifted(const Element& x) const;
  Element h(const Element& x) const;
  Rat pi_scalar(const Element& x) const;  // augmentation; pi(x) = pi_scalar(x) * 1
};

// Throws NotAcyclicFlavor for quantized Weil contexts.
HomotopyOperator koszul_contraction(const AlgebraContext& ctx, const StandardOperators& ops);

// Checks [d,h] = id - i.pi on basis_window(bound); returns the certificate.
OperatorCertificate certify_homotopy(const AlgebraContext& ctx, const StandardOperators& ops,
                                     const HomotopyOperator& H, int bound);

struct TransgressionCochain {
  Element source;     // p
  Element cochain;    // C with d(C) = p - constant
  Rat constant = 0;   // augmentation constant; 0 when p is itself a coboundary
  std::string method; // "homotopy" or "linear-solve"
};

// Finds C with d(C) = p (exactly when allow_constant is false; otherwise up to
// a scalar, which is returned). p must be even, d-closed and central.
// Quantized contexts use an exact sparse solve with deterministic pivoting,
// enlarging the window geometrically up to a hard cap; span, when given,
// restricts the solve to the listed subspace (deformed invariant runs).
TransgressionCochain transgress(const AlgebraContext& ctx, const StandardOperators& ops,
                                const Element& p, int window, bool allow_constant = false,
                                const std::vector<Element>* span = nullptr);

struct ScalarClass {
  Rat value;
  Element witness;  // y with z = value*1 + d(y)
};

// The unique c with z = c*1 + d(y) solvable on the window; throws NotACocycle
// if d(z) != 0 and ClassNotResolved if no witness exists at this window.
ScalarClass scalar_class(const AlgebraContext& ctx, const StandardOperators& ops, const Element& z,
                         int window, const std::vector<Element>* span = nullptr);

}  // namespace weilcliff
