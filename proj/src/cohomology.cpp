#include "weilcliff/cohomology.hpp"

#include <algorithm>

#include "weilcliff/errors.hpp"

namespace weilcliff {

namespace {

Element word_elt(const Word& w) { return Element{{w, Rat(1)}}; }

int spvec_parity(const QuotientComplexWindow& q, const SpVec& v) {
  if (v.empty()) return -1;
  int p = q.coord_words[v[0].first].parity();
  for (const auto& [c, _] : v)
    if (q.coord_words[c].parity() != p) return 2;
  return p;
}

long spvec_level(const QuotientComplexWindow& q, const SpVec& v) {
  long lv = 0;
  for (const auto& [c, _] : v) lv = std::max(lv, q.ctx->word_level(q.coord_words[c]));
  return lv;
}

}  // namespace

SpVec QuotientComplexWindow::coords(const Element& x) const {
  std::map<int, Rat> m;
  for (const auto& [w, c] : x) {
    auto it = coord_index.find(w);
    if (it == coord_index.end())
      throw ClassNotResolved("element escapes the coordinate window of the quotient complex");
    m[it->second] = c;
  }
  return spvec_from_map(m);
}

Element QuotientComplexWindow::lift(const SpVec& v) const {
  Element e;
  for (const auto& [c, q] : v) el_insert(e, coord_words[c], q);
  return e;
}

long QuotientComplexWindow::element_level(const Element& x) const {
  long lv = 0;
  for (const auto& [w, c] : x) lv = std::max(lv, ctx->word_level(w));
  return lv;
}

QuotientComplexWindow quotient_window(const AlgebraContext& ctx, const StandardOperators& ops,
                                      const std::vector<Element>& gens, int bound,
                                      bool restrict_invariant) {
  QuotientComplexWindow q;
  q.ctx = &ctx;
  q.ops = &ops;
  q.bound = bound;
  q.restricted = restrict_invariant;
  q.gens = gens;

  q.coord_words = ctx.basis_window(bound + 1);
  for (std::size_t k = 0; k < q.coord_words.size(); ++k)
    q.coord_index[q.coord_words[k]] = static_cast<int>(k);

  const Derivation& dd = ops.differential();

  // generator preconditions: even, closed, central
  for (const Element& g : gens) {
    if (el_parity(g) == 1 || el_parity(g) == 2)
      throw NonCentralGenerator("quotient generator must be even");
    if (!el_is_zero(dd.apply(g))) throw NonCentralGenerator("quotient generator is not closed");
    if (ctx.even_pbw || !ctx.odd_form.empty()) {
      for (int a = 0; a < ctx.dim; ++a) {
        std::vector<Element> words;
        if (ctx.has_even) words.push_back(word_elt(ctx.even_gen(a)));
        if (ctx.has_odd) words.push_back(word_elt(ctx.odd_gen(a)));
        for (const auto& w : words) {
          Element r = el_add(ctx.mul(g, w), ctx.mul(w, g), Rat(-1));
          if (!el_is_zero(r))
            throw NonCentralGenerator("quotient generator is not central: witness " +
                                      ctx.word_str(w.begin()->first));
        }
      }
    }
    q.gen_levels.push_back(static_cast<int>(q.element_level(g)));
  }

  if (restrict_invariant) {
    q.ambient = invariant_window(ctx, ops, bound + 1);
  } else {
    for (const Word& w : q.coord_words) q.ambient.push_back(word_elt(w));
  }
  std::stable_sort(q.ambient.begin(), q.ambient.end(), [&](const Element& a, const Element& b) {
    return q.element_level(a) < q.element_level(b);
  });
  for (const Element& v : q.ambient) q.ambient_levels.push_back(q.element_level(v));

  // truncated ideal: gens[i] * (ambient at level <= bound + 1 - d_i)
  std::vector<Element> ideal_products;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < q.ambient.size(); ++j) {
      if (q.ambient_levels[j] > bound + 1 - q.gen_levels[i]) continue;
      ideal_products.push_back(ctx.mul(gens[i], q.ambient[j]));
    }
  }
  for (const Element& p : ideal_products) q.ideal.add(q.coords(p));

  // induced differential well defined: d(ideal) stays in the ideal wherever
  // the image is still inside the coordinate window
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < q.ambient.size(); ++j) {
      if (q.ambient_levels[j] > bound - q.gen_levels[i]) continue;
      Element dp = dd.apply(ctx.mul(gens[i], q.ambient[j]));
      if (!q.ideal.reduce(q.coords(dp)).empty())
        throw CertificateFailure("induced differential leaves the truncated ideal");
    }
  }
  return q;
}

std::optional<std::vector<Rat>> CohomologyComputation::class_coords(const Element& z,
                                                                    int level) const {
  if (level < 0 || level > max_level) return std::nullopt;
  const Derivation& dd = qcw.ops->differential();
  SpVec r;
  try {
    r = qcw.reduced_coords(z);
    if (!qcw.ideal.reduce(qcw.coords(dd.apply(z))).empty()) return std::nullopt;
  } catch (const ClassNotResolved&) {
    return std::nullopt;
  }
  const Level& L = levels[level];
  int base = static_cast<int>(qcw.coord_words.size());
  ColumnSolver cs(base);
  for (const auto& rc : L.rep_coords) cs.add_column(rc);
  for (const auto& bc : L.boundary_rows) cs.add_column(bc);
  auto sol = cs.solve(r);
  if (!sol.ok) return std::nullopt;
  std::vector<Rat> out(L.rep_coords.size());
  for (std::size_t i = 0; i < L.rep_coords.size(); ++i) out[i] = sol.x[i];
  return out;
}

CohomologyReport CohomologyComputation::report() const {
  CohomologyReport rep;
  rep.graded = qcw.ctx->graded;
  rep.bound = qcw.bound;
  for (const auto& L : levels) rep.dims.push_back(L.dims);
  rep.stable.assign(rep.dims.size(), rep.graded);
  if (rep.graded) {
    for (std::size_t n = 0; n < rep.dims.size(); ++n) {
      rep.z2.even += rep.dims[n].even;
      rep.z2.odd += rep.dims[n].odd;
    }
  } else if (!rep.dims.empty()) {
    rep.z2 = rep.dims.back();
  }
  return rep;
}

CohomologyComputation cohomology_window(QuotientComplexWindow qcw) {
  CohomologyComputation out;
  const AlgebraContext& ctx = *qcw.ctx;
  const Derivation& dd = qcw.ops->differential();
  int bound = qcw.bound;
  int base = static_cast<int>(qcw.coord_words.size());

  // reduced ambient vectors with levels
  std::vector<SpVec> red;
  std::vector<long> red_level;
  std::vector<int> red_parity;
  {
    Rref seen;
    for (std::size_t j = 0; j < qcw.ambient.size(); ++j) {
      SpVec r = qcw.reduced_coords(qcw.ambient[j]);
      if (r.empty()) continue;
      if (!seen.add(r)) continue;
      // canonicalize against previously added rows for determinism
      red.push_back(seen.rows().back());
      red_level.push_back(qcw.ambient_levels[j]);
      red_parity.push_back(0);
    }
    for (std::size_t j = 0; j < red.size(); ++j) {
      int p = spvec_parity(qcw, red[j]);
      red_parity[j] = p;
    }
  }

  auto dbar = [&](const SpVec& v) { return qcw.ideal.reduce(qcw.coords(dd.apply(qcw.lift(v)))); };

  int top = ctx.graded ? bound : bound - 1;
  out.max_level = top;
  out.levels.resize(top + 1);

  if (ctx.graded) {
    // degree-exact slices
    for (int n = 0; n <= top; ++n) {
      std::vector<SpVec> slice;
      for (std::size_t j = 0; j < red.size(); ++j)
        if (spvec_level(qcw, red[j]) == n) slice.push_back(red[j]);
      // kernel of dbar on the slice
      ColumnSolver cs(base);
      for (const auto& v : slice) cs.add_column(dbar(v));
      std::vector<SpVec> Z;
      for (const auto& k : cs.kernel()) {
        SpVec acc;
        for (std::size_t j = 0; j < slice.size(); ++j)
          if (k[j] != 0) acc = spvec_axpy(acc, k[j], slice[j]);
        Z.push_back(acc);
      }
      // boundaries from degree n-1
      std::vector<SpVec> B;
      if (n > 0)
        for (std::size_t j = 0; j < red.size(); ++j)
          if (spvec_level(qcw, red[j]) == n - 1) {
            SpVec im = dbar(red[j]);
            if (!im.empty()) B.push_back(im);
          }
      Rref hull;
      for (const auto& b : B) hull.add(b);
      std::vector<SpVec> brows = hull.rows();
      auto& L = out.levels[n];
      L.boundary_rows = brows;
      for (const auto& z : Z) {
        if (hull.add(z)) {
          L.rep_coords.push_back(hull.rows().back());
          L.reps.push_back(qcw.lift(L.rep_coords.back()));
          int p = spvec_parity(qcw, L.rep_coords.back());
          (p == 1 ? L.dims.odd : L.dims.even) += 1;
        }
      }
    }
  } else {
    // cumulative filtration levels with parity split
    for (int n = 0; n <= top; ++n) {
      auto& L = out.levels[n];
      for (int sigma = 0; sigma < 2; ++sigma) {
        std::vector<SpVec> S, S1;
        for (std::size_t j = 0; j < red.size(); ++j) {
          if (red_parity[j] != sigma && red_parity[j] != -1) {
            if (red_parity[j] == 2)
              throw CertificateFailure("quotient reduction mixed parities");
            // parity (1 - sigma) rows collected below
          }
          if (red_parity[j] == sigma && red_level[j] <= n) S.push_back(red[j]);
          if (red_parity[j] == 1 - sigma && red_level[j] <= n + 1) S1.push_back(red[j]);
        }
        // Z = ker(dbar) on S
        ColumnSolver cs(base);
        for (const auto& v : S) cs.add_column(dbar(v));
        std::vector<SpVec> Z;
        for (const auto& k : cs.kernel()) {
          SpVec acc;
          for (std::size_t j = 0; j < S.size(); ++j)
            if (k[j] != 0) acc = spvec_axpy(acc, k[j], S[j]);
          Z.push_back(acc);
        }
        // B = dbar(S1) intersected with span(S)
        std::vector<SpVec> images;
        for (const auto& v : S1) {
          SpVec im = dbar(v);
          if (!im.empty()) images.push_back(im);
        }
        std::vector<SpVec> B = intersect_spans(images, S);
        Rref hull;
        for (const auto& b : B) {
          hull.add(b);
          L.boundary_rows.push_back(b);
        }
        for (const auto& z : Z) {
          if (hull.add(z)) {
            L.rep_coords.push_back(hull.rows().back());
            L.reps.push_back(qcw.lift(L.rep_coords.back()));
            (sigma == 1 ? L.dims.odd : L.dims.even) += 1;
          }
        }
      }
    }
  }
  out.qcw = std::move(qcw);
  return out;
}

CohomologyComputation stability_scan(const AlgebraContext& ctx, const StandardOperators& ops,
                                     const std::vector<Element>& gens,
                                     const std::vector<int>& bounds, bool restrict_invariant,
                                     CohomologyReport* merged_report) {
  if (bounds.empty()) throw InvalidDescriptor("stability scan needs at least one bound");
  for (std::size_t i = 1; i < bounds.size(); ++i)
    if (bounds[i] <= bounds[i - 1]) throw InvalidDescriptor("bounds must increase");

  std::vector<CohomologyReport> reps;
  CohomologyComputation top;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    CohomologyComputation c = cohomology_window(
        quotient_window(ctx, ops, gens, bounds[i], restrict_invariant));
    reps.push_back(c.report());
    if (i + 1 == bounds.size()) top = std::move(c);
  }
  if (merged_report) {
    *merged_report = reps.back();
    merged_report->scanned_bounds = bounds;
    for (const auto& r : reps) merged_report->scanned_dims.push_back(r.dims);
    if (!ctx.graded) {
      int max_gen = 0;
      for (int g : top.qcw.gen_levels) max_gen = std::max(max_gen, g);
      int cap = bounds.back() - max_gen - 1;
      merged_report->stable.assign(merged_report->dims.size(), false);
      if (reps.size() >= 2) {
        const auto& prev = reps[reps.size() - 2];
        for (std::size_t n = 0; n < merged_report->dims.size(); ++n) {
          bool agree = n < prev.dims.size() && prev.dims[n] == merged_report->dims[n];
          merged_report->stable[n] = agree && static_cast<int>(n) <= cap;
        }
      }
      // Z2 summary: dims at the largest stable level
      merged_report->z2 = LevelDims{};
      for (std::size_t n = 0; n < merged_report->dims.size(); ++n)
        if (merged_report->stable[n]) merged_report->z2 = merged_report->dims[n];
    }
  }
  return top;
}

}  // namespace weilcliff
