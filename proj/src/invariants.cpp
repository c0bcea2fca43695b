#include "weilcliff/invariants.hpp"

#include <algorithm>

#include <json.hpp>

#include "weilcliff/derivations.hpp"
#include "weilcliff/errors.hpp"
#include "weilcliff/projections.hpp"

namespace weilcliff {

namespace {

Element word_elt(const Word& w) { return Element{{w, Rat(1)}}; }

std::vector<Word> degree_slice(const AlgebraContext& sym, int degree) {
  std::vector<Word> out;
  for (const Word& w : sym.basis_window(degree))
    if (sym.word_level(w) == degree) out.push_back(w);
  return out;
}

Derivation adjoint_derivation(const AlgebraContext& sym, const LieAlgebraData& L, int i) {
  Derivation D;
  D.ctx = &sym;
  D.parity = 0;
  D.name = "ad(" + L.basis_names[i] + ")";
  D.even_images.assign(sym.dim, Element{});
  D.odd_images.assign(sym.dim, Element{});
  for (int a = 0; a < sym.dim; ++a)
    for (const auto& [c, q] : L.bracket(i, a)) el_insert(D.even_images[a], sym.even_gen(c), q);
  return D;
}

}  // namespace

std::vector<Element> invariant_polynomials(const AlgebraContext& sym, const LieAlgebraData& L,
                                           int degree) {
  std::vector<Word> slice = degree_slice(sym, degree);
  std::map<Word, int> index;
  for (std::size_t k = 0; k < slice.size(); ++k) index[slice[k]] = static_cast<int>(k);
  std::vector<Derivation> acts;
  for (int i = 0; i < L.dim; ++i) acts.push_back(adjoint_derivation(sym, L, i));

  int stride = static_cast<int>(slice.size());
  ColumnSolver cs(stride * L.dim);
  for (const Word& w : slice) {
    std::map<int, Rat> col;
    for (int i = 0; i < L.dim; ++i) {
      Element r = acts[i].apply(word_elt(w));
      for (const auto& [ww, c] : r) col[i * stride + index.at(ww)] = c;
    }
    cs.add_column(spvec_from_map(col));
  }
  std::vector<Element> out;
  for (const auto& k : cs.kernel()) {
    Element v;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (k[j] != 0) el_insert(v, slice[j], k[j]);
    out.push_back(std::move(v));
  }
  return out;
}

GeneratorSet primitive_generators(const AlgebraContext& sym, const LieAlgebraData& L,
                                  int max_degree) {
  GeneratorSet gs;
  int rank = static_cast<int>(L.cartan_indices.size());
  for (int z : L.center_indices) {
    gs.classical.push_back(word_elt(sym.even_gen(z)));
    gs.degrees.push_back(1);
  }
  gs.center_count = static_cast<int>(L.center_indices.size());

  for (int d = 2; d <= max_degree && static_cast<int>(gs.classical.size()) < rank; ++d) {
    // span of degree-d products of already chosen generators
    std::vector<Word> slice = degree_slice(sym, d);
    std::map<Word, int> index;
    for (std::size_t k = 0; k < slice.size(); ++k) index[slice[k]] = static_cast<int>(k);
    auto coords = [&](const Element& e) {
      std::map<int, Rat> m;
      for (const auto& [w, c] : e) m[index.at(w)] = c;
      return spvec_from_map(m);
    };
    Rref span;
    std::vector<unsigned> expo(gs.classical.size(), 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
      if (pos == gs.classical.size()) {
        if (left != 0) return;
        bool proper = false;  // exclude single bare generators? products of total degree d
        Element acc{{sym.one(), Rat(1)}};
        int total = 0;
        for (std::size_t i = 0; i < expo.size(); ++i)
          for (unsigned k = 0; k < expo[i]; ++k) {
            acc = sym.mul(acc, gs.classical[i]);
            ++total;
          }
        (void)proper;
        (void)total;
        span.add(coords(acc));
        return;
      }
      for (int k = 0; k * gs.degrees[pos] <= left; ++k) {
        expo[pos] = static_cast<unsigned>(k);
        self(self, pos + 1, left - k * gs.degrees[pos]);
      }
      expo[pos] = 0;
    };
    rec(rec, 0, d);

    for (const Element& inv : invariant_polynomials(sym, L, d)) {
      if (static_cast<int>(gs.classical.size()) >= rank) break;
      if (span.add(coords(inv))) {
        gs.classical.push_back(inv);
        gs.degrees.push_back(d);
      }
    }
  }
  if (static_cast<int>(gs.classical.size()) < rank)
    throw RankNotReached("primitive generators: rank " + std::to_string(rank) +
                         " not reached by degree " + std::to_string(max_degree));
  for (std::size_t i = gs.center_count; i < gs.degrees.size(); ++i)
    gs.exponents.push_back(gs.degrees[i] - 1);
  return gs;
}

void center_generators(const AlgebraContext& sym, const AlgebraContext& env,
                       const LieAlgebraData& L, GeneratorSet& gs) {
  CartanFunctional r = rho(L);
  gs.quantized.clear();
  for (std::size_t gi = 0; gi < gs.classical.size(); ++gi) {
    int deg = gs.degrees[gi];
    Element target = chevalley_project_sym(sym, L, gs.classical[gi]);

    std::vector<Word> uwin = env.basis_window(2 * deg);
    std::vector<Word> ucoords = env.basis_window(2 * deg + 2);
    std::map<Word, int> uindex;
    for (std::size_t k = 0; k < ucoords.size(); ++k) uindex[ucoords[k]] = static_cast<int>(k);
    std::vector<Word> scoords = sym.basis_window(deg);
    std::map<Word, int> sindex;
    for (std::size_t k = 0; k < scoords.size(); ++k) sindex[scoords[k]] = static_cast<int>(k);

    int ustride = static_cast<int>(ucoords.size());
    int base = ustride * L.dim + static_cast<int>(scoords.size());
    ColumnSolver cs(base);
    for (const Word& w : uwin) {
      std::map<int, Rat> col;
      for (int a = 0; a < L.dim; ++a) {
        Element comm = el_add(env.mul(word_elt(env.even_gen(a)), word_elt(w)),
                              env.mul(word_elt(w), word_elt(env.even_gen(a))), Rat(-1));
        for (const auto& [ww, c] : comm) col[a * ustride + uindex.at(ww)] = c;
      }
      Element hc = harish_chandra_project_env(env, sym, L, r, word_elt(w));
      for (const auto& [ww, c] : hc) col[ustride * L.dim + sindex.at(ww)] = c;
      cs.add_column(spvec_from_map(col));
    }
    std::map<int, Rat> rhs;
    for (const auto& [ww, c] : target) rhs[ustride * L.dim + sindex.at(ww)] = c;
    auto sol = cs.solve(spvec_from_map(rhs));
    if (!sol.ok)
      throw CenterSolveFailed("no central lift with the required Harish-Chandra image (generator " +
                              std::to_string(gi + 1) + ")");
    if (!cs.kernel().empty())
      throw CenterSolveFailed("central lift is not unique (generator " + std::to_string(gi + 1) +
                              ")");
    Element phat;
    for (std::size_t j = 0; j < uwin.size(); ++j)
      if (sol.x[j] != 0) el_insert(phat, uwin[j], sol.x[j]);
    // exact certificates: centrality and projection equation
    for (int a = 0; a < L.dim; ++a) {
      Element comm = el_add(env.mul(word_elt(env.even_gen(a)), phat),
                            env.mul(phat, word_elt(env.even_gen(a))), Rat(-1));
      if (!el_is_zero(comm)) throw CenterSolveFailed("solver returned a non-central element");
    }
    Element resid =
        el_add(harish_chandra_project_env(env, sym, L, r, phat), target, Rat(-1));
    if (!el_is_zero(resid)) throw CenterSolveFailed("projection equation residual is nonzero");
    gs.quantized.push_back(std::move(phat));
  }
}

bool hilbert_series_check(const AlgebraContext& sym, const LieAlgebraData& L,
                          const GeneratorSet& gs, int window, std::string* detail) {
  // coefficients of prod_i 1/(1 - t^{d_i}) through t^window
  std::vector<long> series(window + 1, 0);
  series[0] = 1;
  for (int d : gs.degrees)
    for (int n = d; n <= window; ++n) series[n] += series[n - d];
  for (int n = 0; n <= window; ++n) {
    long got = static_cast<long>(invariant_polynomials(sym, L, n).size());
    if (got != series[n]) {
      if (detail)
        *detail = "degree " + std::to_string(n) + ": dim (S^n g)^g = " + std::to_string(got) +
                  " but the generator series gives " + std::to_string(series[n]);
      return false;
    }
  }
  return true;
}

std::string generators_to_json(const AlgebraContext& sym, const GeneratorSet& gs) {
  nlohmann::ordered_json doc;
  doc["generators"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < gs.classical.size(); ++i) {
    nlohmann::ordered_json g;
    g["degree"] = gs.degrees[i];
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [w, c] : gs.classical[i]) {
      nlohmann::ordered_json t;
      t["coeff"] = rat_str(c);
      nlohmann::ordered_json mono;
      for (int a = 0; a < sym.dim; ++a)
        if (w.exps[a]) mono[sym.names[a]] = w.exps[a];
      t["monomial"] = mono;
      terms.push_back(t);
    }
    g["terms"] = terms;
    doc["generators"].push_back(g);
  }
  doc["center_count"] = gs.center_count;
  return doc.dump(2);
}

GeneratorSet generators_from_json(const AlgebraContext& sym, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed generator document: ") + e.what());
  }
  GeneratorSet gs;
  try {
    for (const auto& g : doc.at("generators")) {
      Element e;
      for (const auto& t : g.at("terms")) {
        Word w = sym.one();
        for (const auto& [name, exp] : t.at("monomial").items()) {
          auto it = std::find(sym.names.begin(), sym.names.end(), name);
          if (it == sym.names.end()) throw ParseError("unknown generator name: " + name);
          w.exps[it - sym.names.begin()] = exp.get<unsigned>();
        }
        el_insert(e, w, parse_rat(t.at("coeff").get<std::string>()));
      }
      if (el_is_zero(e)) throw ParseError("zero generator in document");
      long deg = sym.word_level(e.begin()->first);
      for (const auto& [w, c] : e)
        if (sym.word_level(w) != deg) throw ParseError("generators must be homogeneous");
      gs.classical.push_back(e);
      gs.degrees.push_back(static_cast<int>(deg));
    }
    gs.center_count = doc.value("center_count", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed generator document: ") + e.what());
  }
  for (std::size_t i = gs.center_count; i < gs.degrees.size(); ++i)
    gs.exponents.push_back(gs.degrees[i] - 1);
  return gs;
}

}  // namespace weilcliff
