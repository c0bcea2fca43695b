#include "weilcliff/homotopy.hpp"

#include <bit>

#include "weilcliff/errors.hpp"

namespace weilcliff {

namespace {

Element word_elt(const Word& w) { return Element{{w, Rat(1)}}; }

Element substitute_even(const AlgebraContext& ctx, const Element& x,
                        const std::vector<Element>& images) {
  Element out;
  for (const auto& [w, c] : x) {
    Word odd = ctx.one();
    odd.mask = w.mask;
    Element acc = word_elt(odd);
    for (int a = 0; a < ctx.dim; ++a)
      for (unsigned k = 0; k < w.exps[a]; ++k) acc = ctx.mul(images[a], acc);
    out = el_add(out, acc, c);
  }
  return out;
}

// Exterior-model contraction: replaces one shifted even generator by the
// matching odd generator with the insertion sign; pure basis bookkeeping, no
// Clifford contractions (the operator lives in the associated graded).
Element s_operator(const AlgebraContext& ctx, const Element& x) {
  Element out;
  for (const auto& [w, c] : x) {
    for (int a = 0; a < ctx.dim; ++a) {
      if (w.exps[a] == 0) continue;
      if (w.mask >> a & 1) continue;  // exterior square
      Word t = w;
      t.exps[a] -= 1;
      int below = std::popcount(w.mask & ((1ull << a) - 1));
      t.mask = w.mask | (1ull << a);
      Rat sgn = (below & 1) ? Rat(-1) : Rat(1);
      el_insert(out, t, c * Rat(w.exps[a]) * sgn);
    }
  }
  return out;
}

}  // namespace

Element HomotopyOperator::to_shifted(const Element& x) const {
  return substitute_even(*ctx, x, even_shift_images);
}

Element HomotopyOperator::from_shifted(const Element& x) const {
  return substitute_even(*ctx, x, even_unshift_images);
}

Element HomotopyOperator::h(const Element& x) const {
  Element sh = to_shifted(x);
  Element acc;
  for (const auto& [w, c] : sh) {
    long n = 0;
    for (unsigned e : w.exps) n += e;
    n += w.odd_count();
    if (n == 0) continue;  // [d,s] + i.pi acts by 1 there and s kills it
    acc = el_add(acc, s_operator(*ctx, word_elt(w)), c / Rat(n));
  }
  return from_shifted(acc);
}

Rat HomotopyOperator::pi_scalar(const Element& x) const {
  Element sh = to_shifted(x);
  auto it = sh.find(ctx->one());
  return it == sh.end() ? Rat(0) : it->second;
}

HomotopyOperator koszul_contraction(const AlgebraContext& ctx, const StandardOperators& ops) {
  if (ctx.flavor == Flavor::QuantizedWeil)
    throw NotAcyclicFlavor("no homotopy operator for the quantized flavor; use the linear solve");
  if (!ctx.has_even || !ctx.has_odd)
    throw NotAcyclicFlavor("contraction needs a full Koszul-type context");

  HomotopyOperator H;
  H.ctx = &ctx;
  H.xi = ops.xi;
  // In the Weil flavor the role of sgen_a is taken by z_a = d(egen_a); the
  // shifted variable is z_a - xi^a either way. With lambda_a := z_a - sgen_a:
  //   to shifted:  sgen_a -> sgen_a + xi^a - lambda_a
  //   from shifted: sgen_a -> sgen_a - xi^a + lambda_a
  for (int a = 0; a < ctx.dim; ++a) {
    Element lam = el_add(ops.d.apply(word_elt(ctx.odd_gen(a))), word_elt(ctx.even_gen(a)), Rat(-1));
    Rat xia = ops.xi.count(a) ? ops.xi.at(a) : Rat(0);
    Element to = word_elt(ctx.even_gen(a));
    if (xia != 0) el_insert(to, ctx.one(), xia);
    to = el_add(to, lam, Rat(-1));
    Element back = word_elt(ctx.even_gen(a));
    if (xia != 0) el_insert(back, ctx.one(), -xia);
    back = el_add(back, lam);
    H.even_shift_images.push_back(std::move(to));
    H.even_unshift_images.push_back(std::move(back));
  }
  return H;
}

OperatorCertificate certify_homotopy(const AlgebraContext& ctx, const StandardOperators& ops,
                                     const HomotopyOperator& H, int bound) {
  OperatorCertificate cert;
  cert.relation = "[d,h] = id - i.pi";
  cert.bound = bound;
  const Derivation& dd = ops.differential();
  for (const Word& w : ctx.basis_window(bound)) {
    Element x = word_elt(w);
    Element lhs = el_add(dd.apply(H.h(x)), H.h(dd.apply(x)));
    Element rhs = x;
    el_insert(rhs, ctx.one(), -H.pi_scalar(x));
    Element r = el_add(lhs, rhs, Rat(-1));
    if (!el_is_zero(r)) {
      cert.ok = false;
      cert.witness = ctx.word_str(w);
      cert.residual = ctx.str(r);
      break;
    }
  }
  return cert;
}

namespace {

void check_central(const AlgebraContext& ctx, const Element& p) {
  if (!ctx.even_pbw && ctx.odd_form.empty()) return;  // supercommutative, even p is central
  std::vector<Element> gens;
  if (ctx.has_even)
    for (int a = 0; a < ctx.dim; ++a) gens.push_back(word_elt(ctx.even_gen(a)));
  if (ctx.has_odd)
    for (int a = 0; a < ctx.dim; ++a) gens.push_back(word_elt(ctx.odd_gen(a)));
  for (const auto& g : gens) {
    Element r = el_add(ctx.mul(p, g), ctx.mul(g, p), Rat(-1));
    if (!el_is_zero(r)) throw NotCentral("element is not central: [p,.] != 0");
  }
}

struct SolveSetup {
  std::vector<Element> basis;       // solution space basis
  std::vector<Word> target_window;  // coordinates for images
  std::map<Word, int> index;
};

SolveSetup solve_setup(const AlgebraContext& ctx, int window, const std::vector<Element>* span) {
  SolveSetup s;
  if (span) {
    s.basis = *span;
  } else {
    for (const Word& w : ctx.basis_window(window)) s.basis.push_back(word_elt(w));
  }
  s.target_window = ctx.basis_window(window + 2);
  for (std::size_t k = 0; k < s.target_window.size(); ++k)
    s.index[s.target_window[k]] = static_cast<int>(k);
  return s;
}

SpVec coords_of(const SolveSetup& s, const Element& e) {
  std::map<int, Rat> m;
  for (const auto& [w, c] : e) {
    auto it = s.index.find(w);
    if (it == s.index.end()) throw ClassNotResolved("element escapes the solve window");
    m[it->second] = c;
  }
  return spvec_from_map(m);
}

}  // namespace

TransgressionCochain transgress(const AlgebraContext& ctx, const StandardOperators& ops,
                                const Element& p, int window, bool allow_constant,
                                const std::vector<Element>* span) {
  int par = el_parity(p);
  if (par == 1 || par == 2) throw NotCentral("transgression source must be even");
  const Derivation& dd = ops.differential();
  if (!el_is_zero(dd.apply(p))) throw NotACocycle("transgression source is not closed");
  check_central(ctx, p);

  TransgressionCochain out;
  out.source = p;

  if (ctx.flavor != Flavor::QuantizedWeil && span == nullptr) {
    HomotopyOperator H = koszul_contraction(ctx, ops);
    out.cochain = H.h(p);
    out.constant = H.pi_scalar(p);
    out.method = "homotopy";
    Element check = el_add(dd.apply(out.cochain), p, Rat(-1));
    el_insert(check, ctx.one(), out.constant);
    if (!el_is_zero(check))
      throw CertificateFailure("homotopy transgression residual is nonzero");
    if (!allow_constant && out.constant != 0)
      throw NotACoboundary("source is a coboundary only after subtracting " +
                           rat_str(out.constant));
    return out;
  }

  const int hard_cap = 4 * window + 8;
  for (int w = window;; w *= 2) {
    SolveSetup s = solve_setup(ctx, w, span);
    ColumnSolver cs(static_cast<int>(s.target_window.size()));
    if (allow_constant) cs.add_column(coords_of(s, Element{{ctx.one(), Rat(1)}}));
    std::vector<const Element*> cols;
    for (const Element& v : s.basis) {
      if (el_parity(v) == 0) continue;  // cochain must be odd for even p
      cs.add_column(coords_of(s, dd.apply(v)));
      cols.push_back(&v);
    }
    auto sol = cs.solve(coords_of(s, p));
    if (sol.ok) {
      std::size_t off = allow_constant ? 1 : 0;
      if (allow_constant) out.constant = sol.x[0];
      Element c;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (sol.x[off + j] != 0) c = el_add(c, *cols[j], sol.x[off + j]);
      out.cochain = c;
      out.method = "linear-solve";
      Element check = el_add(dd.apply(out.cochain), p, Rat(-1));
      el_insert(check, ctx.one(), out.constant);
      if (!el_is_zero(check)) throw CertificateFailure("transgression residual is nonzero");
      return out;
    }
    if (span || w >= hard_cap)
      throw NotACoboundary("d(x) = p has no solution at window " + std::to_string(w));
  }
}

ScalarClass scalar_class(const AlgebraContext& ctx, const StandardOperators& ops, const Element& z,
                         int window, const std::vector<Element>* span) {
  const Derivation& dd = ops.differential();
  if (!el_is_zero(dd.apply(z))) throw NotACocycle("scalar_class input is not a cocycle");

  if (ctx.flavor != Flavor::QuantizedWeil && span == nullptr) {
    HomotopyOperator H = koszul_contraction(ctx, ops);
    ScalarClass out{H.pi_scalar(z), H.h(z)};
    Element check = el_add(dd.apply(out.witness), z, Rat(-1));
    el_insert(check, ctx.one(), out.value);
    if (!el_is_zero(check)) throw CertificateFailure("scalar class witness residual is nonzero");
    return out;
  }

  SolveSetup s = solve_setup(ctx, window, span);
  ColumnSolver cs(static_cast<int>(s.target_window.size()));
  cs.add_column(coords_of(s, Element{{ctx.one(), Rat(1)}}));
  std::vector<const Element*> cols;
  for (const Element& v : s.basis) {
    cs.add_column(coords_of(s, dd.apply(v)));
    cols.push_back(&v);
  }
  auto sol = cs.solve(coords_of(s, z));
  if (!sol.ok) throw ClassNotResolved("class not resolved at this window");
  ScalarClass out;
  out.value = sol.x[0];
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (sol.x[1 + j] != 0) out.witness = el_add(out.witness, *cols[j], sol.x[1 + j]);
  return out;
}

}  // namespace weilcliff
