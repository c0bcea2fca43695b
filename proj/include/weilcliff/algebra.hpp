#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "weilcliff/lie.hpp"
#include "weilcliff/linalg.hpp"

namespace weilcliff {

enum class Flavor {
  Symmetric,       // SV, commutative, generator degree configurable
  Exterior,        // /\V
  Clifford,        // Cl(V,B), relations vw + wv = 2B(v,w)
  Enveloping,      // Ug, PBW basis, filtration 2 per generator
  Koszul,          // SV (x) /\V, graded (2,1)
  DeformedKoszul,  // SV (x) Cl(V,B), filtered (2,1)
  Weil,            // Sg (x) /\g with Weil differential data, graded
  QuantizedWeil,   // Ug (x) Cl(g,B_g), filtered
};

const char* flavor_name(Flavor f);

// Canonical basis word. Even part: exponent vector over the basis (PBW-ordered
// for enveloping flavors). Odd part: strictly increasing index set as a bitmask.
struct Word {
  std::vector<unsigned> exps;
  std::uint64_t mask = 0;

  bool operator==(const Word&) const = default;
  bool operator<(const Word& o) const {
    if (exps != o.exps) return exps < o.exps;
    return mask < o.mask;
  }
  int odd_count() const;
  int parity() const { return odd_count() & 1; }
};

// Sparse exact linear combination of canonical words.
using Element = std::map<Word, Rat>;

Element el_zero();
bool el_is_zero(const Element& x);
Element el_add(const Element& a, const Element& b, const Rat& s = Rat(1));
Element el_scale(const Element& a, const Rat& s);
void el_insert(Element& x, const Word& w, const Rat& c);
// -1 for zero, 0 even, 1 odd, 2 mixed
int el_parity(const Element& x);

struct AlgebraContext {
  Flavor flavor;
  int dim = 0;
  std::vector<std::string> names;
  const LieAlgebraData* lie = nullptr;         // Enveloping / Weil / QuantizedWeil
  std::vector<std::vector<Rat>> odd_form;      // Clifford form on the odd part (zero => exterior)
  bool has_even = false, has_odd = false;
  bool even_pbw = false;   // noncommutative even part (PBW straightening)
  int even_gen_level = 2;  // degree/filtration carried by one even generator
  bool graded = true;      // degree additive under multiplication

  long word_level(const Word& w) const;
  Word one() const;
  Word even_gen(int a) const;
  Word odd_gen(int a) const;
  Element mul(const Element& x, const Element& y) const;
  // All words of level <= bound, ordered by (level, exps, mask).
  std::vector<Word> basis_window(int bound) const;
  std::string str(const Element& x) const;
  std::string word_str(const Word& w) const;

  // internal engines (exposed for tests)
  std::vector<std::pair<std::vector<unsigned>, Rat>> even_mul(const std::vector<unsigned>& a,
                                                              const std::vector<unsigned>& b) const;
  std::vector<std::pair<std::uint64_t, Rat>> odd_mul(std::uint64_t a, std::uint64_t b) const;

 private:
  mutable std::map<std::vector<int>, std::vector<std::pair<std::vector<unsigned>, Rat>>> pbw_memo_;
  mutable std::mutex memo_mutex_;

 public:
  AlgebraContext() = default;
  AlgebraContext(const AlgebraContext& o)
      : flavor(o.flavor), dim(o.dim), names(o.names), lie(o.lie), odd_form(o.odd_form),
        has_even(o.has_even), has_odd(o.has_odd), even_pbw(o.even_pbw),
        even_gen_level(o.even_gen_level), graded(o.graded) {}
  AlgebraContext& operator=(const AlgebraContext& o) {
    if (this == &o) return *this;
    flavor = o.flavor;
    dim = o.dim;
    names = o.names;
    lie = o.lie;
    odd_form = o.odd_form;
    has_even = o.has_even;
    has_odd = o.has_odd;
    even_pbw = o.even_pbw;
    even_gen_level = o.even_gen_level;
    graded = o.graded;
    std::lock_guard<std::mutex> lk(memo_mutex_);
    pbw_memo_.clear();
    return *this;
  }
};

// Descriptor-driven construction; throws InvalidDescriptor on inconsistent input.
struct AlgebraDescriptor {
  Flavor flavor;
  const LieAlgebraData* lie = nullptr;
  std::optional<std::vector<std::vector<Rat>>> form;
  std::optional<int> dim;
  std::optional<std::vector<std::string>> names;
  int symmetric_gen_level = 1;
};
AlgebraContext build_algebra(const AlgebraDescriptor& d);

AlgebraContext make_symmetric(const LieAlgebraData& L, int gen_level = 1);
AlgebraContext make_enveloping(const LieAlgebraData& L);
AlgebraContext make_koszul(int dim, std::vector<std::string> names);
AlgebraContext make_deformed_koszul(std::vector<std::vector<Rat>> form, std::vector<std::string> names);
AlgebraContext make_weil(const LieAlgebraData& L);
AlgebraContext make_quantized_weil(const LieAlgebraData& L);

long closed_form_window_count(const AlgebraContext& ctx, int bound);

}  // namespace weilcliff
