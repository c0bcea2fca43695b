#include "weilcliff/derivations.hpp"

#include <bit>

#include "weilcliff/errors.hpp"

namespace weilcliff {

namespace {

Element word_elt(const Word& w) { return Element{{w, Rat(1)}}; }

Element split_parity(const Element& x, int p) {
  Element out;
  for (const auto& [w, c] : x)
    if (w.parity() == p) out.emplace(w, c);
  return out;
}

}  // namespace

Element Derivation::apply(const Element& x) const {
  Element out;
  if (inner) {
    for (int p = 0; p < 2; ++p) {
      Element part = split_parity(x, p);
      if (part.empty()) continue;
      Rat sgn = (parity == 1 && p == 1) ? Rat(1) : Rat(-1);
      out = el_add(out, ctx->mul(*inner, part));
      out = el_add(out, ctx->mul(part, *inner), sgn);
    }
    return out;
  }
  for (const auto& [w, c] : x) {
    if (ctx->has_even) {
      // Even generators commute with everything here (commutative even part),
      // so the image can be multiplied from the left.
      for (int a = 0; a < ctx->dim; ++a) {
        if (w.exps[a] == 0 || even_images[a].empty()) continue;
        Word rest = w;
        rest.exps[a] -= 1;
        out = el_add(out, ctx->mul(even_images[a], word_elt(rest)), c * Rat(w.exps[a]));
      }
    }
    if (ctx->has_odd && w.mask) {
      int idx = 0;
      for (int t = 0; t < ctx->dim; ++t) {
        if (!(w.mask >> t & 1)) continue;
        if (!odd_images[t].empty()) {
          Rat sgn = (parity == 1 && (idx & 1)) ? Rat(-1) : Rat(1);
          Word pre = w;
          pre.mask = w.mask & ((1ull << t) - 1);
          Word post = ctx->one();
          post.mask = w.mask & ~((1ull << (t + 1)) - 1);
          Element term = ctx->mul(word_elt(pre), odd_images[t]);
          term = ctx->mul(term, word_elt(post));
          out = el_add(out, term, c * sgn);
        }
        ++idx;
      }
    }
  }
  return out;
}

namespace {

Derivation zero_derivation(const AlgebraContext& ctx, int parity, std::string name) {
  Derivation D;
  D.ctx = &ctx;
  D.parity = parity;
  D.name = std::move(name);
  D.even_images.assign(ctx.dim, Element{});
  D.odd_images.assign(ctx.dim, Element{});
  return D;
}

// bracket coefficient f^{cd}_a
Rat fcd(const LieAlgebraData& L, int c, int d, int a) {
  auto it = L.bracket(c, d).find(a);
  return it == L.bracket(c, d).end() ? Rat(0) : it->second;
}

Element super_bracket(const Derivation& A, const Derivation& B, const Element& x) {
  // [A,B] = AB - (-1)^{|A||B|} BA
  Rat sgn = (A.parity == 1 && B.parity == 1) ? Rat(1) : Rat(-1);
  return el_add(A.apply(B.apply(x)), B.apply(A.apply(x)), sgn);
}

struct CertCheck {
  const AlgebraContext* ctx;
  std::vector<Word> window;
  std::vector<OperatorCertificate>* out;

  template <typename F>
  void relation(const std::string& name, int bound, F&& residual_of) {
    OperatorCertificate cert;
    cert.relation = name;
    cert.bound = bound;
    for (const Word& w : window) {
      Element r = residual_of(word_elt(w));
      if (!el_is_zero(r)) {
        cert.ok = false;
        cert.witness = ctx->word_str(w);
        cert.residual = ctx->str(r);
        break;
      }
    }
    out->push_back(std::move(cert));
  }
};

}  // namespace

std::vector<OperatorCertificate> certify_operators(const StandardOperators& ops, int bound) {
  const AlgebraContext& ctx = *ops.ctx;
  std::vector<OperatorCertificate> certs;
  CertCheck chk{&ctx, ctx.basis_window(bound), &certs};
  int n = ctx.dim;

  chk.relation("d^2 = 0", bound, [&](const Element& x) { return ops.d.apply(ops.d.apply(x)); });
  chk.relation("[iota(x),d] = L(x)", bound, [&](const Element& x) {
    Element r;
    for (int i = 0; i < n; ++i)
      r = el_add(r, el_add(super_bracket(ops.iota[i], ops.d, x), ops.lieL[i].apply(x), Rat(-1)));
    return r;
  });
  chk.relation("[L(x),iota(y)] = iota([x,y])", bound, [&](const Element& x) {
    Element r;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Element lhs = super_bracket(ops.lieL[i], ops.iota[j], x);
        Element rhs;
        if (ops.lie)
          for (const auto& [c, q] : ops.lie->bracket(i, j))
            rhs = el_add(rhs, ops.iota[c].apply(x), q);
        r = el_add(r, el_add(lhs, rhs, Rat(-1)));
      }
    return r;
  });
  chk.relation("[L(x),L(y)] = L([x,y])", bound, [&](const Element& x) {
    Element r;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Element lhs = super_bracket(ops.lieL[i], ops.lieL[j], x);
        Element rhs;
        if (ops.lie)
          for (const auto& [c, q] : ops.lie->bracket(i, j))
            rhs = el_add(rhs, ops.lieL[c].apply(x), q);
        r = el_add(r, el_add(lhs, rhs, Rat(-1)));
      }
    return r;
  });
  chk.relation("[iota(x),iota(y)] = 0", bound, [&](const Element& x) {
    Element r;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) r = el_add(r, super_bracket(ops.iota[i], ops.iota[j], x));
    return r;
  });
  chk.relation("[L(x),d] = 0", bound, [&](const Element& x) {
    Element r;
    for (int i = 0; i < n; ++i) r = el_add(r, super_bracket(ops.lieL[i], ops.d, x));
    return r;
  });
  if (ops.dprime) {
    const std::map<int, Rat>& eff = ops.eta.empty() ? ops.xi : ops.eta;
    Derivation Leff = ops.lie_of(eff);
    chk.relation("d'^2 = -L(xi)", bound, [&](const Element& x) {
      return el_add(ops.dprime->apply(ops.dprime->apply(x)), Leff.apply(x));
    });
  }
  return certs;
}

namespace {

void build_classical(StandardOperators& ops, const AlgebraContext& ctx, const LieAlgebraData* L,
                     const std::map<int, Rat>& xi) {
  int n = ctx.dim;
  bool weil = ctx.flavor == Flavor::Weil;

  Derivation d = zero_derivation(ctx, 1, "d");
  for (int a = 0; a < n; ++a) {
    Element img = word_elt(ctx.even_gen(a));
    if (weil) {
      // lambda(e_a) = -sum_{c<d} f^{cd}_a e_c e_d  (Chevalley-Eilenberg term)
      for (int c = 0; c < n; ++c)
        for (int dd = c + 1; dd < n; ++dd) {
          Rat f = fcd(*L, c, dd, a);
          if (f == 0) continue;
          Word w = ctx.one();
          w.mask = (1ull << c) | (1ull << dd);
          el_insert(img, w, -f);
        }
    }
    d.odd_images[a] = img;
    if (weil) {
      Element s;
      for (int c = 0; c < n; ++c)
        for (int dd = 0; dd < n; ++dd) {
          Rat f = fcd(*L, c, dd, a);
          if (f == 0) continue;
          Word w = ctx.even_gen(dd);
          w.mask = 1ull << c;
          el_insert(s, w, -f);
        }
      d.even_images[a] = s;
    }
  }
  ops.d = d;

  for (int i = 0; i < n; ++i) {
    Derivation io = zero_derivation(ctx, 1, "iota(" + ctx.names[i] + ")");
    io.odd_images[i] = Element{{ctx.one(), Rat(1)}};
    ops.iota.push_back(std::move(io));

    Derivation Ld = zero_derivation(ctx, 0, "L(" + ctx.names[i] + ")");
    if (weil) {
      for (int a = 0; a < n; ++a) {
        Element se, so;
        for (int dd = 0; dd < n; ++dd) {
          Rat f = fcd(*L, i, dd, a);
          if (f == 0) continue;
          el_insert(se, ctx.even_gen(dd), -f);
          el_insert(so, ctx.odd_gen(dd), -f);
        }
        Ld.even_images[a] = se;
        Ld.odd_images[a] = so;
      }
    }
    ops.lieL.push_back(std::move(Ld));
  }

  if (!xi.empty()) {
    Derivation dp = ops.d;
    dp.name = "d'";
    for (const auto& [a, c] : xi) el_insert(dp.odd_images[a], ctx.one(), -c);
    ops.dprime = dp;
  }
}

void build_quantized(StandardOperators& ops, const AlgebraContext& ctx, const LieAlgebraData& L,
                     const std::map<int, Rat>& xi) {
  int n = ctx.dim;
  auto cl_vec = [&](const std::map<int, Rat>& v) {
    Element e;
    for (const auto& [a, c] : v) el_insert(e, ctx.odd_gen(a), c);
    return e;
  };
  auto u_vec = [&](const std::map<int, Rat>& v) {
    Element e;
    for (const auto& [a, c] : v) el_insert(e, ctx.even_gen(a), c);
    return e;
  };

  // g_i = 1/4 sum_a [e_i, e_a] * e^a  (Clifford product)
  for (int i = 0; i < n; ++i) {
    Element g;
    for (int a = 0; a < n; ++a) {
      const auto& br = L.bracket(i, a);
      if (br.empty()) continue;
      g = el_add(g, ctx.mul(cl_vec(br), cl_vec(L.dual[a])), Rat(1, 4));
    }
    ops.g_elems.push_back(g);
  }

  // Cubic part of the Dirac element: [e_i, T3]_+ = -g_i modulo scalars.
  std::vector<std::uint64_t> masks3;
  for (std::uint64_t m = 0; m < (1ull << n); ++m)
    if (std::popcount(m) == 3) masks3.push_back(m);
  std::vector<Word> wwin = ctx.basis_window(4);
  std::map<Word, int> windex;
  for (std::size_t k = 0; k < wwin.size(); ++k) windex[wwin[k]] = static_cast<int>(k);
  auto coords = [&](const Element& e) {
    std::map<int, Rat> m;
    for (const auto& [w, c] : e) m[windex.at(w)] = c;
    return spvec_from_map(m);
  };
  Word one_w = ctx.one();
  Element T3;
  {
    int rows = static_cast<int>(wwin.size()) * n;
    ColumnSolver cs(rows);
    std::map<int, Rat> rhs;
    for (std::size_t mi = 0; mi < masks3.size(); ++mi) {
      Word wm = ctx.one();
      wm.mask = masks3[mi];
      std::map<int, Rat> col;
      for (int i = 0; i < n; ++i) {
        Element anti = el_add(ctx.mul(word_elt(ctx.odd_gen(i)), word_elt(wm)),
                              ctx.mul(word_elt(wm), word_elt(ctx.odd_gen(i))));
        for (const auto& [w, c] : anti) {
          if (w == one_w) continue;  // scalar slack
          col[i * static_cast<int>(wwin.size()) + windex.at(w)] = c;
        }
      }
      cs.add_column(spvec_from_map(col));
    }
    for (int i = 0; i < n; ++i)
      for (const auto& [w, c] : ops.g_elems[i]) {
        if (w == one_w) continue;
        rhs[i * static_cast<int>(wwin.size()) + windex.at(w)] -= c;
      }
    auto sol = cs.solve(spvec_from_map(rhs));
    if (!sol.ok) throw CertificateFailure("cubic Dirac term: no solution");
    for (std::size_t mi = 0; mi < masks3.size(); ++mi) {
      Word wm = ctx.one();
      wm.mask = masks3[mi];
      el_insert(T3, wm, sol.x[mi]);
    }
  }

  // D0 = 1/2 sum_a e^a (x) e_a - 1 (x) T3
  Element D0;
  for (int a = 0; a < n; ++a) {
    for (const auto& [b, c] : L.dual[a]) {
      Word w = ctx.even_gen(b);
      w.mask = 1ull << a;
      el_insert(D0, w, c / 2);
    }
  }
  D0 = el_add(D0, T3, Rat(-1));

  // Linear correction l: [D^2, w] = 0 for all generators w, D = D0 - 1 (x) l.
  {
    Element D0sq = ctx.mul(D0, D0);
    std::vector<Element> gens;
    for (int a = 0; a < n; ++a) gens.push_back(u_vec({{a, Rat(1)}}));
    for (int a = 0; a < n; ++a) gens.push_back(cl_vec({{a, Rat(1)}}));
    std::vector<Word> win6 = ctx.basis_window(8);
    std::map<Word, int> w6;
    for (std::size_t k = 0; k < win6.size(); ++k) w6[win6[k]] = static_cast<int>(k);
    auto comm = [&](const Element& A, const Element& x, int apar) {
      // A even here in the relevant cases handled below
      (void)apar;
      return el_add(ctx.mul(A, x), ctx.mul(x, A), Rat(-1));
    };
    int stride = static_cast<int>(win6.size());
    ColumnSolver cs(stride * 2 * n);
    for (int b = 0; b < n; ++b) {
      Element X = el_add(ctx.mul(D0, cl_vec({{b, Rat(1)}})), ctx.mul(cl_vec({{b, Rat(1)}}), D0));
      std::map<int, Rat> col;
      for (int gi = 0; gi < 2 * n; ++gi) {
        Element r = comm(X, gens[gi], 0);
        for (const auto& [w, c] : r) col[gi * stride + w6.at(w)] = c;
      }
      cs.add_column(spvec_from_map(col));
    }
    std::map<int, Rat> rhs;
    for (int gi = 0; gi < 2 * n; ++gi) {
      Element r = comm(D0sq, gens[gi], 0);
      for (const auto& [w, c] : r) rhs[gi * stride + w6.at(w)] = c;
    }
    auto sol = cs.solve(spvec_from_map(rhs));
    if (!sol.ok) throw CertificateFailure("Dirac element: centrality correction unsolvable");
    std::map<int, Rat> l;
    for (int b = 0; b < n; ++b)
      if (sol.x[b] != 0) l[b] = sol.x[b];
    ops.dirac = el_add(D0, cl_vec(l), Rat(-1));
  }

  Derivation d;
  d.ctx = &ctx;
  d.parity = 1;
  d.name = "d";
  d.inner = ops.dirac;
  ops.d = d;

  for (int i = 0; i < n; ++i) {
    Derivation io;
    io.ctx = &ctx;
    io.parity = 1;
    io.name = "iota(" + ctx.names[i] + ")";
    io.inner = cl_vec({{i, Rat(1)}});
    ops.iota.push_back(std::move(io));

    Derivation Ld;
    Ld.ctx = &ctx;
    Ld.parity = 0;
    Ld.name = "L(" + ctx.names[i] + ")";
    Ld.inner = el_add(u_vec({{i, Rat(1)}}), ops.g_elems[i]);
    ops.lieL.push_back(std::move(Ld));
  }

  if (!xi.empty()) {
    // Effective deformation eta = 1/2 xi-sharp, so that the Harish-Chandra
    // image of d' is the coordinate-deformed Koszul differential.
    std::map<int, Rat> eta;
    for (const auto& [a, c] : xi)
      for (const auto& [b, q] : L.dual[a]) {
        Rat v = c * q / 2;
        if (v != 0) eta[b] += v;
      }
    for (auto it = eta.begin(); it != eta.end();)
      it = it->second == 0 ? eta.erase(it) : std::next(it);
    for (const auto& [b, c] : eta)
      if (!L.is_cartan(b))
        throw ValidationError("deformation vector leaves the Cartan span at index " +
                              std::to_string(b));
    ops.eta = eta;
    Derivation dp;
    dp.ctx = &ctx;
    dp.parity = 1;
    dp.name = "d'";
    dp.inner = el_add(ops.dirac, cl_vec(eta), Rat(-1));
    ops.dprime = dp;
  }
}

}  // namespace

Derivation StandardOperators::iota_of(const std::map<int, Rat>& x) const {
  if (ctx->flavor == Flavor::QuantizedWeil) {
    Derivation D;
    D.ctx = ctx;
    D.parity = 1;
    D.name = "iota(vec)";
    Element in;
    for (const auto& [a, c] : x) el_insert(in, ctx->odd_gen(a), c);
    D.inner = in;
    return D;
  }
  Derivation D = zero_derivation(*ctx, 1, "iota(vec)");
  for (const auto& [a, c] : x) D.odd_images[a] = Element{{ctx->one(), c}};
  return D;
}

Derivation StandardOperators::lie_of(const std::map<int, Rat>& x) const {
  if (ctx->flavor == Flavor::QuantizedWeil) {
    Derivation D;
    D.ctx = ctx;
    D.parity = 0;
    D.name = "L(vec)";
    Element in;
    for (const auto& [a, c] : x) {
      el_insert(in, ctx->even_gen(a), c);
      in = el_add(in, g_elems[a], c);
    }
    D.inner = in;
    return D;
  }
  Derivation D = zero_derivation(*ctx, 0, "L(vec)");
  for (const auto& [a, c] : x) {
    for (int b = 0; b < ctx->dim; ++b) {
      D.even_images[b] = el_add(D.even_images[b], lieL[a].even_images[b], c);
      D.odd_images[b] = el_add(D.odd_images[b], lieL[a].odd_images[b], c);
    }
  }
  return D;
}

StandardOperators standard_operators(const AlgebraContext& ctx, const LieAlgebraData* L,
                                     const std::map<int, Rat>& xi, int cert_bound) {
  StandardOperators ops;
  ops.ctx = &ctx;
  ops.lie = L;
  ops.xi = xi;
  for (const auto& [a, c] : xi)
    if (L && c != 0 && !L->is_cartan(a))
      throw ValidationError("xi must lie in the Cartan span");

  switch (ctx.flavor) {
    case Flavor::Koszul:
    case Flavor::DeformedKoszul:
      build_classical(ops, ctx, nullptr, xi);
      break;
    case Flavor::Weil:
      if (!L) throw InvalidDescriptor("Weil operators need Lie data");
      build_classical(ops, ctx, L, xi);
      break;
    case Flavor::QuantizedWeil:
      if (!L) throw InvalidDescriptor("quantized Weil operators need Lie data");
      build_quantized(ops, ctx, *L, xi);
      break;
    default:
      throw FlavorMismatch("standard_operators: unsupported flavor");
  }

  if (cert_bound > 0) {
    ops.certificates = certify_operators(ops, cert_bound);
    for (const auto& c : ops.certificates)
      if (!c.ok)
        throw CertificateFailure("operator certificate failed: " + c.relation + " at word " +
                                 c.witness + ", residual " + c.residual);
  }
  return ops;
}

std::vector<Element> invariant_window(const AlgebraContext& ctx, const StandardOperators& ops,
                                      int bound, bool xi_only) {
  std::vector<Word> win = ctx.basis_window(bound);
  std::map<Word, int> index;
  for (std::size_t k = 0; k < win.size(); ++k) index[win[k]] = static_cast<int>(k);

  std::vector<Derivation> actions;
  if (xi_only) {
    actions.push_back(ops.lie_of(ops.eta.empty() ? ops.xi : ops.eta));
  } else if (ops.lie) {
    for (int h : ops.lie->cartan_indices) actions.push_back(ops.lieL[h]);
  }
  if (actions.empty()) {
    std::vector<Element> all;
    for (const Word& w : win) all.push_back(word_elt(w));
    return all;
  }

  int stride = static_cast<int>(win.size());
  ColumnSolver cs(stride * static_cast<int>(actions.size()));
  for (const Word& w : win) {
    std::map<int, Rat> col;
    for (std::size_t ai = 0; ai < actions.size(); ++ai) {
      Element r = actions[ai].apply(word_elt(w));
      for (const auto& [ww, c] : r) col[static_cast<int>(ai) * stride + index.at(ww)] = c;
    }
    cs.add_column(spvec_from_map(col));
  }
  std::vector<Element> basis;
  for (const auto& k : cs.kernel()) {
    Element v;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (k[j] != 0) el_insert(v, win[j], k[j]);
    basis.push_back(std::move(v));
  }
  // Certify stability of the span under the (deformed) differential: the image
  // of every basis vector must again be killed by each action.
  const Derivation& dd = ops.differential();
  for (const Element& v : basis) {
    Element dv = dd.apply(v);
    for (const auto& act : actions)
      if (!el_is_zero(act.apply(dv)))
        throw CertificateFailure("invariant window is not differential-stable");
  }
  return basis;
}

}  // namespace weilcliff
