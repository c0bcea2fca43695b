#include "weilcliff/algebra.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "weilcliff/errors.hpp"

namespace weilcliff {

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Symmetric: return "symmetric";
    case Flavor::Exterior: return "exterior";
    case Flavor::Clifford: return "clifford";
    case Flavor::Enveloping: return "enveloping";
    case Flavor::Koszul: return "koszul";
    case Flavor::DeformedKoszul: return "deformed-koszul";
    case Flavor::Weil: return "weil";
    case Flavor::QuantizedWeil: return "quantized-weil";
  }
  return "?";
}

int Word::odd_count() const { return std::popcount(mask); }

Element el_zero() { return {}; }

bool el_is_zero(const Element& x) { return x.empty(); }

Element el_add(const Element& a, const Element& b, const Rat& s) {
  Element out = a;
  for (const auto& [w, c] : b) el_insert(out, w, s * c);
  return out;
}

Element el_scale(const Element& a, const Rat& s) {
  Element out;
  if (s == 0) return out;
  for (const auto& [w, c] : a) out[w] = s * c;
  return out;
}

void el_insert(Element& x, const Word& w, const Rat& c) {
  if (c == 0) return;
  auto it = x.find(w);
  if (it == x.end()) {
    x.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

int el_parity(const Element& x) {
  if (x.empty()) return -1;
  int p = x.begin()->first.parity();
  for (const auto& [w, c] : x)
    if (w.parity() != p) return 2;
  return p;
}

long AlgebraContext::word_level(const Word& w) const {
  long s = 0;
  for (unsigned e : w.exps) s += e;
  return static_cast<long>(even_gen_level) * s + w.odd_count();
}

Word AlgebraContext::one() const {
  Word w;
  if (has_even) w.exps.assign(dim, 0);
  return w;
}

Word AlgebraContext::even_gen(int a) const {
  Word w = one();
  w.exps[a] = 1;
  return w;
}

Word AlgebraContext::odd_gen(int a) const {
  Word w = one();
  w.mask = 1ull << a;
  return w;
}

std::vector<std::pair<std::vector<unsigned>, Rat>> AlgebraContext::even_mul(
    const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
  if (!even_pbw) {
    std::vector<unsigned> s(a);
    for (int i = 0; i < dim; ++i) s[i] += b[i];
    return {{std::move(s), Rat(1)}};
  }
  // PBW straightening of the concatenated generator sequence.
  std::vector<int> seq;
  for (int p = 0; p < dim; ++p) {
    int g = lie->pbw_order[p];
    for (unsigned k = 0; k < a[g]; ++k) seq.push_back(g);
  }
  for (int p = 0; p < dim; ++p) {
    int g = lie->pbw_order[p];
    for (unsigned k = 0; k < b[g]; ++k) seq.push_back(g);
  }
  // straighten(seq) with memoization
  struct Rec {
    const AlgebraContext* ctx;
    std::vector<std::pair<std::vector<unsigned>, Rat>> run(std::vector<int> s) {
      {
        std::lock_guard<std::mutex> lk(ctx->memo_mutex_);
        auto it = ctx->pbw_memo_.find(s);
        if (it != ctx->pbw_memo_.end()) return it->second;
      }
      std::vector<std::pair<std::vector<unsigned>, Rat>> out;
      bool sorted = true;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        int x = s[i], y = s[i + 1];
        if (ctx->lie->pbw_pos[x] <= ctx->lie->pbw_pos[y]) continue;
        sorted = false;
        std::map<std::vector<unsigned>, Rat> acc;
        std::vector<int> sw = s;
        std::swap(sw[i], sw[i + 1]);
        for (auto& [w, c] : run(std::move(sw))) acc[w] += c;
        for (const auto& [g, coeff] : ctx->lie->bracket(x, y)) {
          std::vector<int> sub;
          sub.reserve(s.size() - 1);
          sub.insert(sub.end(), s.begin(), s.begin() + i);
          sub.push_back(g);
          sub.insert(sub.end(), s.begin() + i + 2, s.end());
          for (auto& [w, c] : run(std::move(sub))) acc[w] += coeff * c;
        }
        for (auto& [w, c] : acc)
          if (c != 0) out.emplace_back(w, c);
        break;
      }
      if (sorted) {
        std::vector<unsigned> w(ctx->dim, 0);
        for (int g : s) ++w[g];
        out.emplace_back(std::move(w), Rat(1));
      }
      std::lock_guard<std::mutex> lk(ctx->memo_mutex_);
      ctx->pbw_memo_.emplace(std::move(s), out);
      return out;
    }
  } rec{this};
  return rec.run(std::move(seq));
}

namespace {

// e_S * e_t with relations vw + wv = 2B(v,w); zero form reproduces /\V.
void cliff_mul_gen(const std::vector<std::vector<Rat>>& B, std::uint64_t S, int t,
                   std::map<std::uint64_t, Rat>& out, const Rat& c) {
  if (c == 0) return;
  if (S == 0) {
    out[1ull << t] += c;
    return;
  }
  int m = 63 - std::countl_zero(S);
  std::uint64_t Sp = S & ~(1ull << m);
  if (m < t) {
    out[S | (1ull << t)] += c;
    return;
  }
  if (m == t) {
    if (!B.empty() && B[t][t] != 0) out[Sp] += c * B[t][t];
    return;
  }
  // m > t: e_S e_t = -(e_Sp e_t) e_m + 2B(m,t) e_Sp; indices in e_Sp e_t stay < m.
  std::map<std::uint64_t, Rat> tmp;
  cliff_mul_gen(B, Sp, t, tmp, c);
  for (auto& [M, q] : tmp)
    if (q != 0) out[M | (1ull << m)] -= q;
  if (!B.empty() && B[m][t] != 0) out[Sp] += 2 * c * B[m][t];
}

}  // namespace

std::vector<std::pair<std::uint64_t, Rat>> AlgebraContext::odd_mul(std::uint64_t a,
                                                                   std::uint64_t b) const {
  std::map<std::uint64_t, Rat> cur;
  cur[a] = 1;
  std::uint64_t rest = b;
  while (rest) {
    int t = std::countr_zero(rest);
    rest &= rest - 1;
    std::map<std::uint64_t, Rat> nxt;
    for (const auto& [M, c] : cur) cliff_mul_gen(odd_form, M, t, nxt, c);
    cur.clear();
    for (auto& [M, c] : nxt)
      if (c != 0) cur.emplace(M, std::move(c));
  }
  return {cur.begin(), cur.end()};
}

Element AlgebraContext::mul(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [wx, cx] : x) {
    for (const auto& [wy, cy] : y) {
      Rat c = cx * cy;
      // Even factors are central in the Z2 sense, so no cross sign appears
      // when regrouping (E1 S1)(E2 S2) = (E1 E2)(S1 S2).
      auto ev = has_even ? even_mul(wx.exps, wy.exps)
                         : std::vector<std::pair<std::vector<unsigned>, Rat>>{{{}, Rat(1)}};
      auto od = has_odd ? odd_mul(wx.mask, wy.mask)
                        : std::vector<std::pair<std::uint64_t, Rat>>{{0ull, Rat(1)}};
      for (const auto& [we, ce] : ev)
        for (const auto& [wo, co] : od) {
          Word w;
          w.exps = we;
          w.mask = wo;
          el_insert(out, w, c * ce * co);
        }
    }
  }
  return out;
}

std::vector<Word> AlgebraContext::basis_window(int bound) const {
  std::vector<Word> out;
  std::vector<unsigned> exps(has_even ? dim : 0, 0);
  auto emit_masks = [&](const std::vector<unsigned>& e, int budget) {
    if (!has_odd) {
      Word w;
      w.exps = e;
      out.push_back(w);
      return;
    }
    for (std::uint64_t m = 0; m < (1ull << dim); ++m) {
      if (std::popcount(m) > budget) continue;
      Word w;
      w.exps = e;
      w.mask = m;
      out.push_back(w);
    }
  };
  if (!has_even) {
    emit_masks(exps, bound);
  } else {
    // enumerate exponent vectors with even_gen_level * sum <= bound
    std::vector<unsigned> cur(dim, 0);
    auto rec = [&](auto&& self, int pos, int level_left) -> void {
      if (pos == dim) {
        emit_masks(cur, level_left);
        return;
      }
      for (int k = 0; k * even_gen_level <= level_left; ++k) {
        cur[pos] = static_cast<unsigned>(k);
        self(self, pos + 1, level_left - k * even_gen_level);
      }
      cur[pos] = 0;
    };
    rec(rec, 0, bound);
  }
  std::sort(out.begin(), out.end(), [this](const Word& a, const Word& b) {
    long la = word_level(a), lb = word_level(b);
    if (la != lb) return la < lb;
    if (a.exps != b.exps) return a.exps < b.exps;
    return a.mask < b.mask;
  });
  return out;
}

std::string AlgebraContext::word_str(const Word& w) const {
  std::ostringstream os;
  bool any = false;
  if (has_even) {
    for (int p = 0; p < dim; ++p) {
      // print in PBW order for enveloping flavors, input order otherwise
      int g = even_pbw ? lie->pbw_order[p] : p;
      if (w.exps[g] == 0) continue;
      if (any) os << "*";
      os << names[g];
      if (w.exps[g] > 1) os << "^" << w.exps[g];
      any = true;
    }
  }
  if (w.mask) {
    if (any) os << "*";
    os << "w(";
    bool first = true;
    for (int t = 0; t < dim; ++t)
      if (w.mask >> t & 1) {
        if (!first) os << ",";
        os << names[t];
        first = false;
      }
    os << ")";
    any = true;
  }
  if (!any) os << "1";
  return os.str();
}

std::string AlgebraContext::str(const Element& x) const {
  if (x.empty()) return "0";
  std::vector<std::pair<Word, Rat>> terms(x.begin(), x.end());
  std::sort(terms.begin(), terms.end(), [this](const auto& a, const auto& b) {
    long la = word_level(a.first), lb = word_level(b.first);
    if (la != lb) return la < lb;
    if (a.first.exps != b.first.exps) return a.first.exps < b.first.exps;
    return a.first.mask < b.first.mask;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms) {
    Rat a = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::string ws = word_str(w);
    if (ws == "1") {
      os << rat_str(a);
    } else if (a == 1) {
      os << ws;
    } else {
      os << rat_str(a) << "*" << ws;
    }
  }
  return os.str();
}

namespace {

std::vector<std::string> default_names(int dim) {
  std::vector<std::string> n;
  for (int i = 0; i < dim; ++i) n.push_back("v" + std::to_string(i + 1));
  return n;
}

void check_form(const std::vector<std::vector<Rat>>& f, int dim) {
  if (static_cast<int>(f.size()) != dim) throw InvalidDescriptor("form has wrong shape");
  for (const auto& r : f)
    if (static_cast<int>(r.size()) != dim) throw InvalidDescriptor("form has wrong shape");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (f[i][j] != f[j][i]) throw InvalidDescriptor("Clifford form must be symmetric");
}

}  // namespace

AlgebraContext build_algebra(const AlgebraDescriptor& d) {
  AlgebraContext c;
  c.flavor = d.flavor;
  switch (d.flavor) {
    case Flavor::Symmetric:
      if (d.lie) {
        c.dim = d.lie->dim;
        c.names = d.lie->basis_names;
        c.lie = d.lie;
      } else if (d.dim) {
        c.dim = *d.dim;
        c.names = d.names ? *d.names : default_names(c.dim);
      } else {
        throw InvalidDescriptor("symmetric flavor needs a Lie algebra or a dimension");
      }
      c.has_even = true;
      c.even_gen_level = d.symmetric_gen_level;
      c.graded = true;
      break;
    case Flavor::Exterior:
      if (!d.dim && !d.lie) throw InvalidDescriptor("exterior flavor needs a dimension");
      c.dim = d.dim ? *d.dim : d.lie->dim;
      c.names = d.names ? *d.names : (d.lie ? d.lie->basis_names : default_names(c.dim));
      c.has_odd = true;
      c.even_gen_level = 1;
      c.graded = true;
      break;
    case Flavor::Clifford:
      if (!d.form) throw InvalidDescriptor("Clifford flavor requires a symmetric form");
      c.dim = static_cast<int>(d.form->size());
      check_form(*d.form, c.dim);
      c.odd_form = *d.form;
      c.names = d.names ? *d.names : default_names(c.dim);
      c.has_odd = true;
      c.even_gen_level = 1;
      c.graded = false;
      break;
    case Flavor::Enveloping:
      if (!d.lie) throw InvalidDescriptor("enveloping flavor requires a Lie algebra");
      return make_enveloping(*d.lie);
    case Flavor::Koszul: {
      int dim = d.dim ? *d.dim : (d.lie ? d.lie->dim : -1);
      if (dim < 0) throw InvalidDescriptor("Koszul flavor needs a dimension");
      auto names = d.names ? *d.names : (d.lie ? d.lie->basis_names : default_names(dim));
      return make_koszul(dim, names);
    }
    case Flavor::DeformedKoszul: {
      std::vector<std::vector<Rat>> f;
      if (d.form)
        f = *d.form;
      else if (d.lie)
        f = d.lie->form;
      else
        throw InvalidDescriptor("deformed Koszul flavor requires a symmetric form");
      auto names = d.names ? *d.names : (d.lie ? d.lie->basis_names : default_names(f.size()));
      return make_deformed_koszul(f, names);
    }
    case Flavor::Weil:
      if (!d.lie) throw InvalidDescriptor("Weil flavor requires a Lie algebra");
      return make_weil(*d.lie);
    case Flavor::QuantizedWeil:
      if (!d.lie) throw InvalidDescriptor("quantized Weil flavor requires a Lie algebra");
      return make_quantized_weil(*d.lie);
  }
  return c;
}

AlgebraContext make_symmetric(const LieAlgebraData& L, int gen_level) {
  AlgebraDescriptor d;
  d.flavor = Flavor::Symmetric;
  d.lie = &L;
  d.symmetric_gen_level = gen_level;
  return build_algebra(d);
}

AlgebraContext make_enveloping(const LieAlgebraData& L) {
  AlgebraContext c;
  c.flavor = Flavor::Enveloping;
  c.dim = L.dim;
  c.names = L.basis_names;
  c.lie = &L;
  c.has_even = true;
  c.even_pbw = true;
  c.even_gen_level = 2;
  c.graded = false;
  return c;
}

AlgebraContext make_koszul(int dim, std::vector<std::string> names) {
  AlgebraContext c;
  c.flavor = Flavor::Koszul;
  c.dim = dim;
  c.names = std::move(names);
  c.has_even = c.has_odd = true;
  c.even_gen_level = 2;
  c.graded = true;
  return c;
}

AlgebraContext make_deformed_koszul(std::vector<std::vector<Rat>> form,
                                    std::vector<std::string> names) {
  AlgebraContext c;
  c.flavor = Flavor::DeformedKoszul;
  c.dim = static_cast<int>(form.size());
  check_form(form, c.dim);
  c.odd_form = std::move(form);
  c.names = std::move(names);
  c.has_even = c.has_odd = true;
  c.even_gen_level = 2;
  c.graded = false;
  return c;
}

AlgebraContext make_weil(const LieAlgebraData& L) {
  AlgebraContext c;
  c.flavor = Flavor::Weil;
  c.dim = L.dim;
  c.names = L.basis_names;
  c.lie = &L;
  c.has_even = c.has_odd = true;
  c.even_gen_level = 2;
  c.graded = true;
  return c;
}

AlgebraContext make_quantized_weil(const LieAlgebraData& L) {
  AlgebraContext c;
  c.flavor = Flavor::QuantizedWeil;
  c.dim = L.dim;
  c.names = L.basis_names;
  c.lie = &L;
  c.odd_form = L.form;
  c.has_even = c.has_odd = true;
  c.even_pbw = true;
  c.even_gen_level = 2;
  c.graded = false;
  return c;
}

long closed_form_window_count(const AlgebraContext& ctx, int bound) {
  // Independent count: sum over (even multidegree s, odd size k) of
  // C(dim-1+s, s) * C(dim, k) with level*s + k <= bound.
  auto binom = [](long n, long k) {
    if (k < 0 || k > n) return 0l;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  long total = 0;
  int max_s = ctx.has_even ? bound / ctx.even_gen_level : 0;
  for (int s = 0; s <= max_s; ++s) {
    long even_count = ctx.has_even ? binom(ctx.dim - 1 + s, s) : (s == 0 ? 1 : 0);
    if (!ctx.has_odd) {
      total += even_count;
      continue;
    }
    int budget = bound - s * ctx.even_gen_level;
    for (int k = 0; k <= std::min(budget, ctx.dim); ++k) total += even_count * binom(ctx.dim, k);
  }
  return total;
}

}  // namespace weilcliff
