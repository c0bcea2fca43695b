#include "weilcliff/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "weilcliff/errors.hpp"
#include "weilcliff/invariants.hpp"
#include "weilcliff/projections.hpp"

namespace weilcliff {

namespace {

using nlohmann::ordered_json;

Element word_elt(const Word& w) { return Element{{w, Rat(1)}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// generator embeddings into the run context
Element embed_literal(const AlgebraContext& ctx, const Element& g) {
  Element out;
  for (const auto& [w, c] : g) {
    Word t = ctx.one();
    t.exps = w.exps;
    el_insert(out, t, c);
  }
  return out;
}

// Weil flavor: the S-leg of W(g) carries the coadjoint action, so classical
// invariants enter through the B-flat substitution e_a -> sum_b B_ab sgen_b.
Element embed_bflat(const AlgebraContext& ctx, const LieAlgebraData& L, const Element& g) {
  std::vector<Element> images(ctx.dim);
  for (int a = 0; a < ctx.dim; ++a) {
    Element img;
    for (int b = 0; b < ctx.dim; ++b)
      if (L.form[a][b] != 0) el_insert(img, ctx.even_gen(b), L.form[a][b]);
    images[a] = img;
  }
  Element out;
  for (const auto& [w, c] : g) {
    Element acc{{ctx.one(), Rat(1)}};
    for (int a = 0; a < ctx.dim; ++a)
      for (unsigned k = 0; k < w.exps[a]; ++k) acc = ctx.mul(acc, images[a]);
    out = el_add(out, acc, c);
  }
  return out;
}

ordered_json rat_matrix_json(const std::vector<std::vector<Rat>>& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : m) {
    ordered_json row = ordered_json::array();
    for (const auto& q : r) row.push_back(rat_str(q));
    rows.push_back(row);
  }
  return rows;
}

ordered_json dims_json(const std::vector<LevelDims>& dims, const std::vector<bool>& stable,
                       bool graded) {
  ordered_json out = ordered_json::object();
  for (std::size_t n = 0; n < dims.size(); ++n) {
    ordered_json lvl;
    lvl["even"] = dims[n].even;
    lvl["odd"] = dims[n].odd;
    lvl["total"] = dims[n].total();
    lvl["stable"] = graded || (n < stable.size() && stable[n]);
    out[std::to_string(n)] = lvl;
  }
  return out;
}

struct PipelineState {
  LieAlgebraData L;
  AlgebraContext ctx;
  AlgebraContext sym;   // polynomial degree 1 over the basis
  AlgebraContext env;   // quantized variants
  std::map<int, Rat> xi;
  std::vector<int> bounds;
  StandardOperators ops;
  GeneratorSet gens;
  std::vector<Element> embedded;        // quotient generators before the xi shift
  std::vector<Rat> shift_constants;     // p_i(xi)-type constants (deformed runs)
  std::vector<Element> quotient_gens;   // shifted when deformed
  std::vector<Element> span;            // invariant ambient for restricted solves
  bool restricted = false;
  std::vector<TransgressionCochain> cochains;
  bool cochains_ready = false;
};

}  // namespace

Flavor parse_variant(const std::string& name) {
  if (name == "koszul") return Flavor::Koszul;
  if (name == "deformed-koszul") return Flavor::DeformedKoszul;
  if (name == "weil") return Flavor::Weil;
  if (name == "quantized-weil") return Flavor::QuantizedWeil;
  throw ParseError("unknown variant: " + name);
}

namespace {

void make_cochains(PipelineState& st) {
  if (st.cochains_ready) return;
  int window = st.bounds.back();
  const std::vector<Element>* span = st.restricted ? &st.span : nullptr;
  for (const Element& g : st.quotient_gens)
    st.cochains.push_back(transgress(st.ctx, st.ops, g, window, false, span));
  st.cochains_ready = true;
}

FormMatrix closed_form_for(const PipelineState& st) {
  // The closed form contracts generator gradients at xi against the Clifford
  // form of the odd leg; graded flavors have a zero odd form.
  std::vector<std::vector<Rat>> zero(st.ctx.dim, std::vector<Rat>(st.ctx.dim, Rat(0)));
  const auto& form = st.ctx.odd_form.empty() ? zero : st.ctx.odd_form;
  std::vector<Element> polys;
  if (st.ctx.flavor == Flavor::QuantizedWeil) {
    if (st.xi.empty()) {
      polys = st.gens.classical;
    } else {
      CartanFunctional r = rho(st.L);
      for (const Element& q : st.gens.quantized)
        polys.push_back(harish_chandra_project_env(st.env, st.sym, st.L, r, q));
    }
  } else {
    polys = st.gens.classical;
  }
  return deformed_form_closed(st.sym, polys, form, st.xi);
}

}  // namespace

RunResult run_pipeline(const RunConfig& cfg) {
  RunResult res;
  ordered_json& R = res.report;
  std::ostringstream table;

  PipelineState st;
  try {
    std::string text = cfg.spec_path.empty() ? cfg.spec_text : read_file(cfg.spec_path);
    st.L = load_lie_algebra(text);

    R["input"] = ordered_json::object();
    R["input"]["spec"] = cfg.spec_path.empty() ? "<inline>" : cfg.spec_path;
    R["input"]["digest"] = hex64(fnv1a(text));
    R["input"]["algebra"] = st.L.name;
    R["input"]["dim"] = st.L.dim;
    R["input"]["variant"] = flavor_name(cfg.variant);

    switch (cfg.variant) {
      case Flavor::Koszul:
        st.ctx = make_koszul(st.L.dim, st.L.basis_names);
        break;
      case Flavor::DeformedKoszul:
        st.ctx = make_deformed_koszul(st.L.form, st.L.basis_names);
        break;
      case Flavor::Weil:
        st.ctx = make_weil(st.L);
        break;
      case Flavor::QuantizedWeil:
        st.ctx = make_quantized_weil(st.L);
        break;
      default:
        throw InvalidDescriptor("unsupported variant");
    }
    st.sym = make_symmetric(st.L, 1);
    if (cfg.variant == Flavor::QuantizedWeil) st.env = make_enveloping(st.L);

    if (!cfg.xi_cartan.empty()) {
      if (cfg.xi_cartan.size() != st.L.cartan_indices.size())
        throw ParseError("xi needs one coordinate per Cartan index");
      for (std::size_t i = 0; i < cfg.xi_cartan.size(); ++i)
        if (cfg.xi_cartan[i] != 0) st.xi[st.L.cartan_indices[i]] = cfg.xi_cartan[i];
    }
    ordered_json xij = ordered_json::array();
    for (const auto& q : cfg.xi_cartan) xij.push_back(rat_str(q));
    R["input"]["xi"] = xij;

    st.bounds = cfg.bounds;
    if (st.bounds.empty()) st.bounds = st.ctx.graded ? std::vector<int>{8} : std::vector<int>{6, 8};
    for (std::size_t i = 1; i < st.bounds.size(); ++i)
      if (st.bounds[i] <= st.bounds[i - 1]) throw ParseError("bounds must be increasing");
    R["input"]["bounds"] = st.bounds;
    st.restricted = !st.xi.empty() &&
                    (cfg.variant == Flavor::Weil || cfg.variant == Flavor::QuantizedWeil);
  } catch (const std::exception& e) {
    R["error"] = e.what();
    res.exit_code = 2;
    res.table = std::string("input error: ") + e.what() + "\n";
    return res;
  }

  std::map<std::string, bool> results;
  ordered_json checks_json = ordered_json::object();
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    results[name] = ok;
    ordered_json c;
    c["pass"] = ok;
    if (!detail.empty()) c["detail"] = detail;
    checks_json[name] = c;
    table << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) table << "  (" << detail << ")";
    table << "\n";
  };

  try {
    // --- operators and certificates ---
    const LieAlgebraData* lie_arg =
        (cfg.variant == Flavor::Weil || cfg.variant == Flavor::QuantizedWeil) ? &st.L : nullptr;
    st.ops = standard_operators(st.ctx, lie_arg, st.xi, 0);
    st.ops.certificates = certify_operators(st.ops, cfg.cert_bound);
    bool certs_ok = true;
    ordered_json certs = ordered_json::array();
    for (const auto& c : st.ops.certificates) {
      ordered_json cj;
      cj["relation"] = c.relation;
      cj["bound"] = c.bound;
      cj["ok"] = c.ok;
      cj["residual_hash"] = hex64(fnv1a(c.ok ? "0" : c.witness + "|" + c.residual));
      if (!c.ok) {
        cj["witness"] = c.witness;
        cj["residual"] = c.residual;
        certs_ok = false;
      }
      certs.push_back(cj);
    }
    if (st.ctx.flavor != Flavor::QuantizedWeil) {
      HomotopyOperator H = koszul_contraction(st.ctx, st.ops);
      OperatorCertificate hc = certify_homotopy(st.ctx, st.ops, H, cfg.cert_bound);
      ordered_json cj;
      cj["relation"] = hc.relation;
      cj["bound"] = hc.bound;
      cj["ok"] = hc.ok;
      cj["residual_hash"] = hex64(fnv1a(hc.ok ? "0" : hc.witness + "|" + hc.residual));
      if (!hc.ok) certs_ok = false;
      certs.push_back(cj);
    }
    R["certificates"] = certs;
    if (cfg.checks.count("cartan")) record("cartan", certs_ok, certs_ok ? "" : "see certificates");

    // --- generators ---
    if (!cfg.generators_path.empty()) {
      st.gens = generators_from_json(st.sym, read_file(cfg.generators_path));
    } else if (cfg.variant == Flavor::Koszul || cfg.variant == Flavor::DeformedKoszul) {
      for (int a = 0; a < st.L.dim; ++a) {
        st.gens.classical.push_back(word_elt(st.sym.even_gen(a)));
        st.gens.degrees.push_back(1);
      }
      st.gens.center_count = st.L.dim;
    } else {
      int max_degree = 2 * st.L.dim;
      st.gens = primitive_generators(st.sym, st.L, max_degree);
    }
    if (cfg.variant == Flavor::QuantizedWeil) center_generators(st.sym, st.env, st.L, st.gens);

    {
      ordered_json gj;
      gj["count"] = st.gens.classical.size();
      gj["degrees"] = st.gens.degrees;
      gj["center_count"] = st.gens.center_count;
      gj["exponents"] = st.gens.exponents;
      ordered_json cls = ordered_json::array();
      for (const auto& g : st.gens.classical) cls.push_back(st.sym.str(g));
      gj["classical"] = cls;
      if (!st.gens.quantized.empty()) {
        ordered_json qs = ordered_json::array();
        for (const auto& g : st.gens.quantized) qs.push_back(st.env.str(g));
        gj["quantized"] = qs;
      }
      R["generators"] = gj;
      table << "generators: degrees [";
      for (std::size_t i = 0; i < st.gens.degrees.size(); ++i)
        table << (i ? "," : "") << st.gens.degrees[i];
      table << "]\n";
    }

    // --- embed and shift ---
    for (std::size_t i = 0; i < st.gens.classical.size(); ++i) {
      if (cfg.variant == Flavor::QuantizedWeil)
        st.embedded.push_back(embed_literal(st.ctx, st.gens.quantized[i]));
      else if (cfg.variant == Flavor::Weil)
        st.embedded.push_back(embed_bflat(st.ctx, st.L, st.gens.classical[i]));
      else
        st.embedded.push_back(embed_literal(st.ctx, st.gens.classical[i]));
    }
    if (st.restricted) st.span = invariant_window(st.ctx, st.ops, st.bounds.back() + 1);
    if (!st.xi.empty()) {
      const std::vector<Element>* span = st.restricted ? &st.span : nullptr;
      ordered_json consts = ordered_json::array();
      for (const Element& g : st.embedded) {
        Rat c = scalar_class(st.ctx, st.ops, g, st.bounds.back(), span).value;
        st.shift_constants.push_back(c);
        Element shifted = g;
        el_insert(shifted, st.ctx.one(), -c);
        st.quotient_gens.push_back(shifted);
        consts.push_back(rat_str(c));
      }
      R["generators"]["shift_constants"] = consts;
    } else {
      st.quotient_gens = st.embedded;
    }

    // --- checks ---
    for (const std::string& name : cfg.checks) {
      if (name == "cartan") continue;  // already recorded
      if (name == "acyclicity") {
        CohomologyReport rep;
        stability_scan(st.ctx, st.ops, {}, st.bounds, st.restricted, &rep);
        bool ok = true;
        std::string detail;
        if (st.ctx.graded) {
          for (std::size_t n = 0; n < rep.dims.size(); ++n) {
            int want = n == 0 ? 1 : 0;
            if (rep.dims[n].total() != want) {
              ok = false;
              detail = "H^" + std::to_string(n) + " has dimension " +
                       std::to_string(rep.dims[n].total());
              break;
            }
          }
        } else {
          ok = rep.z2.even == 1 && rep.z2.odd == 0;
          if (!ok) detail = "stable dims (" + std::to_string(rep.z2.even) + "," +
                            std::to_string(rep.z2.odd) + ") != (1,0)";
        }
        record("acyclicity", ok, detail);
      } else if (name == "cohomology" || name == "clifford" || name == "projections") {
        // handled below with shared data
      } else if (name == "form") {
        make_cochains(st);
        const std::vector<Element>* span = st.restricted ? &st.span : nullptr;
        FormMatrix Ft = transgression_form(st.ctx, st.ops, st.cochains, st.bounds.back(), span);
        FormMatrix Fc = closed_form_for(st);
        R["form"] = ordered_json::object();
        R["form"]["transgression"] = rat_matrix_json(Ft.entries);
        R["form"]["closed"] = rat_matrix_json(Fc.entries);
        bool ok = Ft == Fc;
        std::string detail = ok ? "" : "transgression and closed-form matrices differ";
        if (st.ctx.graded) {
          for (const auto& row : Ft.entries)
            for (const auto& e : row)
              if (e != 0) {
                ok = false;
                detail = "graded flavor has a nonzero transgression form";
              }
        }
        record("form", ok, detail);
        table << "form (transgression): " << R["form"]["transgression"].dump() << "\n";
        table << "form (closed):        " << R["form"]["closed"].dump() << "\n";
      } else if (name == "uct") {
        if (!st.ctx.graded) throw InvalidDescriptor("uct check applies to graded variants only");
        bool ok = true;
        std::string detail;
        ordered_json uj = ordered_json::array();
        for (std::size_t i = 0; i < st.quotient_gens.size(); ++i) {
          UctReport ur = uct_split_check(st.ctx, st.ops, st.quotient_gens[i], st.bounds.back());
          ordered_json gj;
          gj["generator"] = i;
          gj["ok"] = ur.ok;
          if (!ur.ok) gj["witness"] = ur.witness;
          uj.push_back(gj);
          if (!ur.ok) {
            ok = false;
            if (detail.empty()) detail = "generator " + std::to_string(i) + " at " + ur.witness;
          }
        }
        R["uct"] = uj;
        record("uct", ok, detail);
      }
    }

    bool need_cohomology = cfg.checks.count("cohomology") || cfg.checks.count("clifford") ||
                           cfg.checks.count("projections");
    if (need_cohomology) {
      CohomologyReport rep;
      CohomologyComputation H =
          stability_scan(st.ctx, st.ops, st.quotient_gens, st.bounds, st.restricted, &rep);
      R["cohomology"] = ordered_json::object();
      R["cohomology"]["graded"] = rep.graded;
      R["cohomology"]["dims"] = dims_json(rep.dims, rep.stable, rep.graded);
      R["cohomology"]["z2"] = ordered_json{{"even", rep.z2.even}, {"odd", rep.z2.odd}};
      table << "cohomology dims:";
      for (std::size_t n = 0; n < rep.dims.size(); ++n)
        table << " " << n << ":" << rep.dims[n].total()
              << ((rep.graded || rep.stable[n]) ? "" : "?");
      table << "\n";

      if (cfg.checks.count("cohomology")) {
        bool ok = rep.dims.empty() ? false : rep.dims[0].total() == 1;
        std::string detail = ok ? "" : "H at level 0 is not one-dimensional";
        if (!st.ctx.graded) {
          bool any = false;
          for (bool s : rep.stable) any = any || s;
          if (!any) {
            ok = false;
            detail = "no stable level reached";
          }
        }
        record("cohomology", ok, detail);
      }

      if (cfg.checks.count("clifford")) {
        make_cochains(st);
        const std::vector<Element>* span = st.restricted ? &st.span : nullptr;
        FormMatrix Ft = transgression_form(st.ctx, st.ops, st.cochains, st.bounds.back(), span);
        CliffordVerdict v = clifford_check(H, rep, st.cochains, Ft);
        R["clifford"] = ordered_json::object();
        R["clifford"]["verdict"] = v.ok ? v.verdict : "fail";
        R["clifford"]["total_dimension"] = v.total_dimension;
        if (!v.detail.empty()) R["clifford"]["detail"] = v.detail;
        record("clifford", v.ok, v.ok ? v.verdict : v.detail);
      }

      if (cfg.checks.count("projections")) {
        if (cfg.variant != Flavor::Weil && cfg.variant != Flavor::QuantizedWeil)
          throw InvalidDescriptor("projections check applies to weil and quantized-weil variants");
        CartanTarget tgt = cartan_target(st.L);
        CartanFunctional r = rho(st.L);
        AlgebraContext dst = cfg.variant == Flavor::Weil
                                 ? make_koszul(static_cast<int>(tgt.idx.size()), tgt.names)
                                 : make_deformed_koszul(tgt.form, tgt.names);
        std::map<int, Rat> dst_xi;
        for (std::size_t i = 0; i < tgt.idx.size(); ++i) {
          auto it = st.xi.find(tgt.idx[i]);
          if (it != st.xi.end()) dst_xi[static_cast<int>(i)] = it->second;
        }
        StandardOperators dst_ops = standard_operators(dst, nullptr, dst_xi, 0);
        auto project = [&](const Element& x) {
          return cfg.variant == Flavor::Weil ? chevalley_restrict(st.ctx, dst, st.L, x)
                                             : harish_chandra_restrict(st.ctx, dst, st.L, r, x);
        };
        // the projections are differential space maps: certify on a window
        bool comm_ok = true;
        for (const Word& w : st.ctx.basis_window(std::min(cfg.cert_bound, 4))) {
          Element lhs = project(st.ops.differential().apply(word_elt(w)));
          Element rhs = dst_ops.differential().apply(project(word_elt(w)));
          if (!el_is_zero(el_add(lhs, rhs, Rat(-1)))) {
            comm_ok = false;
            break;
          }
        }
        // target generators are the projected ones, shifted by their own constants
        std::vector<Element> dst_gens;
        for (const Element& g : st.embedded) {
          Element pg = project(g);
          if (!st.xi.empty()) {
            Rat c = scalar_class(dst, dst_ops, pg, st.bounds.back(), nullptr).value;
            el_insert(pg, dst.one(), -c);
          }
          dst_gens.push_back(pg);
        }
        CohomologyReport dst_rep;
        CohomologyComputation Hdst =
            stability_scan(dst, dst_ops, dst_gens, st.bounds, false, &dst_rep);
        IsoReport iso = verify_induced_iso(H, rep, Hdst, dst_rep, project);
        bool ok = iso.ok && comm_ok;
        std::string detail = !comm_ok ? "projection does not commute with d" : iso.detail;
        if (ok && cfg.variant == Flavor::QuantizedWeil) {
          // the Harish-Chandra projection preserves the transgression form
          make_cochains(st);
          const std::vector<Element>* span = st.restricted ? &st.span : nullptr;
          FormMatrix Fs = transgression_form(st.ctx, st.ops, st.cochains, st.bounds.back(), span);
          std::vector<TransgressionCochain> dst_cochains;
          for (const Element& g : dst_gens)
            dst_cochains.push_back(transgress(dst, dst_ops, g, st.bounds.back(), false, nullptr));
          FormMatrix Fd =
              transgression_form(dst, dst_ops, dst_cochains, st.bounds.back(), nullptr);
          if (!(Fs == Fd)) {
            ok = false;
            detail = "transgression form does not match across the projection";
          }
          R["projections_form_target"] = rat_matrix_json(Fd.entries);
        }
        record("projections", ok, detail);
      }
    }
  } catch (const ParseError& e) {
    R["error"] = e.what();
    res.exit_code = 2;
    res.table = table.str() + "input error: " + e.what() + "\n";
    return res;
  } catch (const InvalidDescriptor& e) {
    R["error"] = e.what();
    res.exit_code = 2;
    res.table = table.str() + "input error: " + e.what() + "\n";
    return res;
  } catch (const std::exception& e) {
    R["error"] = e.what();
    record("pipeline", false, e.what());
  }

  R["checks"] = checks_json;
  bool all_ok = true;
  for (const auto& [name, ok] : results) all_ok = all_ok && ok;
  res.exit_code = all_ok ? 0 : 1;
  R["status"] = all_ok ? "pass" : "fail";
  table << "status: " << (all_ok ? "pass" : "fail") << "\n";
  res.table = table.str();
  return res;
}

}  // namespace weilcliff
