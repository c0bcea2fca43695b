#pragma once

#include "weilcliff/algebra.hpp"
#include "weilcliff/lie.hpp"

namespace weilcliff {

// Primitive generator data: classical generators live in a Symmetric context
// over L (polynomial degree 1 per generator), quantized ones in an Enveloping
// context over L.
struct GeneratorSet {
  std::vector<Element> classical;
  std::vector<int> degrees;       // nondecreasing within the semisimple block
  int center_count = 0;           // l; center basis comes first (degree 1)
  std::vector<int> exponents;     // m_i = d_i - 1 for the semisimple block
  std::vector<Element> quantized; // filled by center_generators; may be empty
};

// Exact basis of the joint kernel of the adjoint-action derivations on the
// degree component of Sg.
std::vector<Element> invariant_polynomials(const AlgebraContext& sym, const LieAlgebraData& L,
                                           int degree);

// Center basis first, then degree-ascending semisimple generators chosen
// independent from the subalgebra generated by the lower-degree picks.
// rank = dim Cartan. Throws RankNotReached when max_degree is too small.
GeneratorSet primitive_generators(const AlgebraContext& sym, const LieAlgebraData& L,
                                  int max_degree);

// For each classical generator, the unique central element of Ug with
// filtration <= 2 deg and Phi_HC(p-hat) = Phi_Ch(p-tilde). Throws
// CenterSolveFailed if the linear system is inconsistent or not unique.
void center_generators(const AlgebraContext& sym, const AlgebraContext& env,
                       const LieAlgebraData& L, GeneratorSet& gs);

// Kostant freeness evidence: dim (S^n g)^g must match the coefficients of
// prod 1/(1 - t^{d_i}) through the window.
bool hilbert_series_check(const AlgebraContext& sym, const LieAlgebraData& L,
                          const GeneratorSet& gs, int window, std::string* detail = nullptr);

// Element-document import/export (rationals as strings).
std::string generators_to_json(const AlgebraContext& sym, const GeneratorSet& gs);
GeneratorSet generators_from_json(const AlgebraContext& sym, const std::string& text);

}  // namespace weilcliff
