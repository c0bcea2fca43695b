#pragma once

#include "weilcliff/cohomology.hpp"
#include "weilcliff/homotopy.hpp"

namespace weilcliff {

struct FormMatrix {
  std::vector<std::vector<Rat>> entries;  // r x r, symmetric
  std::string provenance;                 // "supercommutator-class" or "closed-form"
  bool operator==(const FormMatrix& o) const { return entries == o.entries; }
};

// B(p_i, p_j) = scalar_class( (C_i C_j + C_j C_i) / 2 ).
FormMatrix transgression_form(const AlgebraContext& ctx, const StandardOperators& ops,
                              const std::vector<TransgressionCochain>& cochains, int window,
                              const std::vector<Element>* span = nullptr);

// B(p_i, p_j) = sum_{a,b} dp_i/de_a(xi) dp_j/de_b(xi) B(e_a, e_b), evaluated
// exactly at the point xi (basis coordinates). polys live in a symmetric
// context; form is the Clifford form of the complex the cochains live in.
FormMatrix deformed_form_closed(const AlgebraContext& sym, const std::vector<Element>& polys,
                                const std::vector<std::vector<Rat>>& form,
                                const std::map<int, Rat>& xi);

struct CliffordVerdict {
  bool ok = false;
  std::string verdict;  // "exterior" when B = 0, else "clifford"
  std::string detail;   // first violated relation on failure
  int total_dimension = 0;
};

// Verifies (i) total dimension 2^r on the stable window, (ii) the class of
// C_i C_j + C_j C_i equals 2 B_ij [1], (iii) the 2^r subset products form a
// basis of the cohomology.
CliffordVerdict clifford_check(const CohomologyComputation& H, const CohomologyReport& rep,
                               const std::vector<TransgressionCochain>& cochains,
                               const FormMatrix& B);

struct UctDegreeRow {
  int degree = 0;
  int lhs = 0;         // dim H^n(W (x)_R M)
  int tensor_part = 0; // dim (H(W) (x)_R M)_n
  int tor_part = 0;    // dim Tor_R(H(W), M) contribution at n
  bool ok = false;
};

struct UctReport {
  bool ok = true;
  std::vector<UctDegreeRow> rows;
  std::string witness;  // first failing degree
};

// Universal-coefficient dimension check over R = k[p] with M = k (quotient by
// p) or M = R (flat). Tor is realized as the p-torsion kernel on H(W) classes.
// Graded flavors only.
UctReport uct_split_check(const AlgebraContext& ctx, const StandardOperators& ops,
                          const Element& p, int bound, bool flat_module = false);

}  // namespace weilcliff
