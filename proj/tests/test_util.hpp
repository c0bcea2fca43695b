#pragma once

#include <random>
#include <string>

#include "weilcliff/algebra.hpp"
#include "weilcliff/lie.hpp"

namespace wtest {

inline std::string data_path(const std::string& name) {
  return std::string(WEILCLIFF_DATA_DIR) + "/" + name;
}

inline weilcliff::LieAlgebraData load(const std::string& name) {
  return weilcliff::load_lie_algebra_file(data_path(name));
}

// Deterministic sparse random elements for property tests.
class Sampler {
 public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  weilcliff::Rat rat() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    weilcliff::Rat q(num(rng_), den(rng_));
    q.canonicalize();
    return q;
  }

  weilcliff::Element element(const weilcliff::AlgebraContext& ctx, int bound, int terms) {
    auto win = ctx.basis_window(bound);
    std::uniform_int_distribution<std::size_t> pick(0, win.size() - 1);
    weilcliff::Element e;
    for (int t = 0; t < terms; ++t) el_insert(e, win[pick(rng_)], rat());
    return e;
  }

  weilcliff::Element homogeneous(const weilcliff::AlgebraContext& ctx, int level, int terms) {
    std::vector<weilcliff::Word> slice;
    for (const auto& w : ctx.basis_window(level))
      if (ctx.word_level(w) == level) slice.push_back(w);
    std::uniform_int_distribution<std::size_t> pick(0, slice.size() - 1);
    weilcliff::Element e;
    for (int t = 0; t < terms; ++t) el_insert(e, slice[pick(rng_)], rat());
    return e;
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace wtest
