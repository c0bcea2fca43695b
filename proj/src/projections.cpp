#include "weilcliff/projections.hpp"

#include "weilcliff/errors.hpp"

namespace weilcliff {

namespace {

bool cartan_supported(const LieAlgebraData& L, const Word& w, bool check_even, bool check_odd) {
  if (check_even)
    for (std::size_t a = 0; a < w.exps.size(); ++a)
      if (w.exps[a] && !L.is_cartan(static_cast<int>(a))) return false;
  if (check_odd)
    for (int t = 0; t < 62; ++t)
      if ((w.mask >> t & 1) && !L.is_cartan(t)) return false;
  return true;
}

// Remaps a Cartan-supported source word to the target index space. The odd
// part keeps its relative order (the Cartan indices are taken in increasing
// target order), so no sign appears.
Word remap_word(const AlgebraContext& dst, const std::vector<int>& idx, const Word& w) {
  Word out = dst.one();
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (dst.has_even && !w.exps.empty()) out.exps[p] = w.exps[idx[p]];
    if (dst.has_odd && (w.mask >> idx[p] & 1)) out.mask |= 1ull << p;
  }
  return out;
}

// gamma: substitute h_p -> h_p - rho(h_p) on the even variables of dst.
Element rho_shift(const AlgebraContext& dst, const std::vector<int>& idx,
                  const CartanFunctional& rho, const Element& x) {
  Element out;
  for (const auto& [w, c] : x) {
    Word odd = dst.one();
    odd.mask = w.mask;
    Element acc{{odd, Rat(1)}};
    for (std::size_t p = 0; p < idx.size(); ++p) {
      if (!dst.has_even || w.exps[p] == 0) continue;
      Element shifted{{dst.even_gen(static_cast<int>(p)), Rat(1)}};
      Rat rp = rho.values.count(idx[p]) ? rho.values.at(idx[p]) : Rat(0);
      if (rp != 0) el_insert(shifted, dst.one(), -rp);
      for (unsigned k = 0; k < w.exps[p]; ++k) acc = dst.mul(acc, shifted);
    }
    out = el_add(out, acc, c);
  }
  return out;
}

}  // namespace

CartanTarget cartan_target(const LieAlgebraData& L) {
  CartanTarget t;
  t.idx = L.cartan_indices;
  for (int i : t.idx) t.names.push_back(L.basis_names[i]);
  t.form.assign(t.idx.size(), std::vector<Rat>(t.idx.size(), Rat(0)));
  for (std::size_t a = 0; a < t.idx.size(); ++a)
    for (std::size_t b = 0; b < t.idx.size(); ++b) t.form[a][b] = L.form[t.idx[a]][t.idx[b]];
  return t;
}

Element chevalley_project_sym(const AlgebraContext& sym, const LieAlgebraData& L,
                              const Element& x) {
  Element out;
  for (const auto& [w, c] : x)
    if (cartan_supported(L, w, true, true)) out.emplace(w, c);
  return out;
}

Element chevalley_restrict(const AlgebraContext& src, const AlgebraContext& dst,
                           const LieAlgebraData& L, const Element& x) {
  CartanTarget t = cartan_target(L);
  Element out;
  for (const auto& [w, c] : x)
    if (cartan_supported(L, w, src.has_even, src.has_odd))
      el_insert(out, remap_word(dst, t.idx, w), c);
  return out;
}

Element harish_chandra_project_env(const AlgebraContext& env, const AlgebraContext& sym,
                                   const LieAlgebraData& L, const CartanFunctional& rho,
                                   const Element& x) {
  (void)env;
  // kappa: keep pure-Cartan PBW words (as symmetric monomials, same indices)
  Element kappa;
  for (const auto& [w, c] : x) {
    if (!cartan_supported(L, w, true, false)) continue;
    Word sw = sym.one();
    for (int a = 0; a < sym.dim; ++a) sw.exps[a] = w.exps[a];
    el_insert(kappa, sw, c);
  }
  // gamma in the full symmetric context: indices are their own targets
  std::vector<int> idx(sym.dim);
  for (int a = 0; a < sym.dim; ++a) idx[a] = a;
  return rho_shift(sym, idx, rho, kappa);
}

Element harish_chandra_restrict(const AlgebraContext& src, const AlgebraContext& dst,
                                const LieAlgebraData& L, const CartanFunctional& rho,
                                const Element& x) {
  if (src.flavor != Flavor::QuantizedWeil && src.flavor != Flavor::Enveloping)
    throw FlavorMismatch("Harish-Chandra projection acts on enveloping-type contexts");
  CartanTarget t = cartan_target(L);
  Element kappa;
  for (const auto& [w, c] : x)
    if (cartan_supported(L, w, true, true)) el_insert(kappa, remap_word(dst, t.idx, w), c);
  return rho_shift(dst, t.idx, rho, kappa);
}

IsoReport verify_induced_iso(const CohomologyComputation& src, const CohomologyReport& src_rep,
                             const CohomologyComputation& dst, const CohomologyReport& dst_rep,
                             const std::function<Element(const Element&)>& project) {
  IsoReport out;
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    if (out.detail.empty()) out.detail = msg;
  };

  if (src_rep.graded != dst_rep.graded) {
    fail("grading kinds differ");
    return out;
  }

  // levels at which both sides are comparable
  std::vector<int> compare;
  std::size_t n = std::min(src_rep.dims.size(), dst_rep.dims.size());
  for (std::size_t k = 0; k < n; ++k) {
    bool usable = src_rep.graded || (src_rep.stable[k] && dst_rep.stable[k]);
    if (usable) compare.push_back(static_cast<int>(k));
  }
  if (compare.empty()) {
    fail("no comparable levels");
    return out;
  }
  for (int k : compare) {
    if (src_rep.dims[k].total() != dst_rep.dims[k].total()) {
      fail("dimension mismatch at level " + std::to_string(k) + ": " +
           std::to_string(src_rep.dims[k].total()) + " vs " +
           std::to_string(dst_rep.dims[k].total()));
      return out;
    }
  }

  // projected source representatives must span the target classes
  for (int k : compare) {
    const auto& reps = src.levels[k].reps;
    Rref span;
    for (const Element& r : reps) {
      Element img = project(r);
      auto cc = dst.class_coords(img, k);
      if (!cc) {
        fail("projected representative not resolved at level " + std::to_string(k));
        return out;
      }
      std::map<int, Rat> m;
      for (std::size_t j = 0; j < cc->size(); ++j)
        if ((*cc)[j] != 0) m[static_cast<int>(j)] = (*cc)[j];
      span.add(spvec_from_map(m));
    }
    if (span.rank() != dst_rep.dims[k].total()) {
      fail("projected classes do not span at level " + std::to_string(k));
      return out;
    }
  }
  return out;
}

}  // namespace weilcliff
