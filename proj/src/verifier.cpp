#include "weilcliff/verifier.hpp"

#include <algorithm>

#include "weilcliff/errors.hpp"

namespace weilcliff {

FormMatrix transgression_form(const AlgebraContext& ctx, const StandardOperators& ops,
                              const std::vector<TransgressionCochain>& cochains, int window,
                              const std::vector<Element>* span) {
  int r = static_cast<int>(cochains.size());
  FormMatrix B;
  B.provenance = "supercommutator-class";
  B.entries.assign(r, std::vector<Rat>(r, Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Element z = el_add(ctx.mul(cochains[i].cochain, cochains[j].cochain),
                         ctx.mul(cochains[j].cochain, cochains[i].cochain));
      z = el_scale(z, Rat(1, 2));
      Rat v = scalar_class(ctx, ops, z, window, span).value;
      B.entries[i][j] = v;
      B.entries[j][i] = v;
    }
  return B;
}

namespace {

Element partial(const AlgebraContext& sym, const Element& p, int a) {
  Element out;
  for (const auto& [w, c] : p) {
    if (w.exps[a] == 0) continue;
    Word t = w;
    t.exps[a] -= 1;
    el_insert(out, t, c * Rat(w.exps[a]));
  }
  return out;
}

Rat evaluate(const AlgebraContext& sym, const Element& p, const std::map<int, Rat>& xi) {
  Rat acc = 0;
  for (const auto& [w, c] : p) {
    Rat term = c;
    for (int a = 0; a < sym.dim && term != 0; ++a) {
      for (unsigned k = 0; k < w.exps[a]; ++k) {
        auto it = xi.find(a);
        if (it == xi.end()) {
          term = 0;
          break;
        }
        term *= it->second;
      }
    }
    acc += term;
  }
  return acc;
}

}  // namespace

FormMatrix deformed_form_closed(const AlgebraContext& sym, const std::vector<Element>& polys,
                                const std::vector<std::vector<Rat>>& form,
                                const std::map<int, Rat>& xi) {
  int r = static_cast<int>(polys.size());
  FormMatrix B;
  B.provenance = "closed-form";
  B.entries.assign(r, std::vector<Rat>(r, Rat(0)));
  std::vector<std::vector<Rat>> grads(r, std::vector<Rat>(sym.dim, Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < sym.dim; ++a) grads[i][a] = evaluate(sym, partial(sym, polys[i], a), xi);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Rat acc = 0;
      for (int a = 0; a < sym.dim; ++a)
        for (int b = 0; b < sym.dim; ++b)
          if (form[a][b] != 0) acc += grads[i][a] * grads[j][b] * form[a][b];
      B.entries[i][j] = acc;
      B.entries[j][i] = acc;
    }
  return B;
}

CliffordVerdict clifford_check(const CohomologyComputation& H, const CohomologyReport& rep,
                               const std::vector<TransgressionCochain>& cochains,
                               const FormMatrix& B) {
  const AlgebraContext& ctx = *H.qcw.ctx;
  int r = static_cast<int>(cochains.size());
  CliffordVerdict v;
  bool zero_form = true;
  for (const auto& row : B.entries)
    for (const auto& e : row)
      if (e != 0) zero_form = false;
  v.verdict = zero_form ? "exterior" : "clifford";

  // (i) total dimension 2^r on the stable window
  int expect = 1 << r;
  int total = 0;
  if (rep.graded) {
    total = rep.z2.total();
  } else {
    bool any_stable = false;
    for (std::size_t n = 0; n < rep.stable.size(); ++n)
      if (rep.stable[n]) any_stable = true;
    if (!any_stable) {
      v.detail = "no stable level in the scanned window";
      return v;
    }
    total = rep.z2.total();
  }
  v.total_dimension = total;
  if (total != expect) {
    v.detail = "total dimension " + std::to_string(total) + " differs from 2^r = " +
               std::to_string(expect);
    return v;
  }

  // class level for a product of transgression cochains
  auto product_level = [&](const std::vector<int>& subset) {
    if (rep.graded) {
      long lv = 0;
      for (int i : subset) lv += H.qcw.element_level(cochains[i].cochain);
      return static_cast<int>(lv);
    }
    return H.max_level;
  };

  // (iii) subset products give 2^r independent classes
  std::map<int, std::vector<std::vector<Rat>>> by_level;
  std::map<int, int> counts;
  for (int s = 0; s < (1 << r); ++s) {
    std::vector<int> subset;
    for (int i = 0; i < r; ++i)
      if (s >> i & 1) subset.push_back(i);
    Element prod{{ctx.one(), Rat(1)}};
    for (int i : subset) prod = ctx.mul(prod, cochains[i].cochain);
    int lv = product_level(subset);
    auto cc = H.class_coords(prod, lv);
    if (!cc) {
      v.detail = "product class for subset " + std::to_string(s) + " not resolved at level " +
                 std::to_string(lv);
      return v;
    }
    bool nonzero = false;
    for (const Rat& q : *cc)
      if (q != 0) nonzero = true;
    if (!nonzero) {
      v.detail = "product of distinct classes vanishes (subset " + std::to_string(s) + ")";
      return v;
    }
    by_level[lv].push_back(*cc);
    counts[lv] += 1;
  }
  for (const auto& [lv, vecs] : by_level) {
    Rref rr;
    for (const auto& vec : vecs) {
      std::map<int, Rat> m;
      for (std::size_t k = 0; k < vec.size(); ++k)
        if (vec[k] != 0) m[static_cast<int>(k)] = vec[k];
      rr.add(spvec_from_map(m));
    }
    if (rr.rank() != counts[lv]) {
      v.detail = "subset product classes are dependent at level " + std::to_string(lv);
      return v;
    }
  }

  // (ii) Clifford relations against B
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      Element u = el_add(ctx.mul(cochains[i].cochain, cochains[j].cochain),
                         ctx.mul(cochains[j].cochain, cochains[i].cochain));
      el_insert(u, ctx.one(), -2 * B.entries[i][j]);
      int lv = product_level({i, j});
      auto cc = H.class_coords(u, lv);
      if (!cc) {
        v.detail = "relation class (" + std::to_string(i) + "," + std::to_string(j) +
                   ") not resolved";
        return v;
      }
      for (const Rat& q : *cc)
        if (q != 0) {
          v.detail = "Clifford relation failed at pair (" + std::to_string(i) + "," +
                     std::to_string(j) + ")";
          return v;
        }
    }

  v.ok = true;
  return v;
}

UctReport uct_split_check(const AlgebraContext& ctx, const StandardOperators& ops,
                          const Element& p, int bound, bool flat_module) {
  if (!ctx.graded) throw FlavorMismatch("universal-coefficient check runs on graded flavors");
  UctReport rep;

  // H(W) with no quotient, through bound + dp + 1 so the shifted terms exist.
  int dp = 0;
  for (const auto& [w, c] : p) dp = std::max(dp, static_cast<int>(ctx.word_level(w)));
  CohomologyComputation full =
      cohomology_window(quotient_window(ctx, ops, {}, bound + dp + 1, false));
  CohomologyComputation quot =
      flat_module ? cohomology_window(quotient_window(ctx, ops, {}, bound, false))
                  : cohomology_window(quotient_window(ctx, ops, {p}, bound, false));

  auto dimH = [&](int n) {
    if (n < 0 || n > full.max_level) return 0;
    return full.levels[n].dims.total();
  };
  // rank of multiplication by p: H^m -> H^{m+dp}
  auto rank_p = [&](int m) {
    if (flat_module) return 0;  // M = R: Tor and the quotient vanish from the comparison
    if (m < 0 || m > full.max_level || m + dp > full.max_level) return 0;
    Rref rr;
    for (const Element& repm : full.levels[m].reps) {
      Element prod = full.qcw.ctx->mul(p, repm);
      auto cc = full.class_coords(prod, m + dp);
      if (!cc) throw DimensionMismatch("p-action class not resolved at degree " + std::to_string(m));
      std::map<int, Rat> mm;
      for (std::size_t k = 0; k < cc->size(); ++k)
        if ((*cc)[k] != 0) mm[static_cast<int>(k)] = (*cc)[k];
      rr.add(spvec_from_map(mm));
    }
    return rr.rank();
  };

  for (int n = 0; n <= bound; ++n) {
    UctDegreeRow row;
    row.degree = n;
    row.lhs = n <= quot.max_level ? quot.levels[n].dims.total() : 0;
    if (flat_module) {
      row.tensor_part = dimH(n);
      row.tor_part = 0;
    } else {
      row.tensor_part = dimH(n) - rank_p(n - dp);
      int m = n + 1 - dp;
      row.tor_part = dimH(m) - rank_p(m);
    }
    row.ok = row.lhs == row.tensor_part + row.tor_part;
    if (!row.ok && rep.witness.empty()) rep.witness = "degree " + std::to_string(n);
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace weilcliff
