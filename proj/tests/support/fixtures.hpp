#pragma once

#include <ostream>
#include <random>
#include <vector>

#include "rootstack/series.hpp"
#include "rootstack/targets.hpp"

namespace rootstack {

// Readable gtest failure messages.
inline void PrintTo(const GradedSeries& s, std::ostream* os) { *os << to_string(s); }

}  // namespace rootstack

namespace rootstack::testing {

inline TargetSpace p2() { return TargetSpace({2}); }
inline TargetSpace p1p1() { return TargetSpace({1, 1}); }

inline DivisorArrangement line_conic() {
  return DivisorArrangement(p2(), {{"L", {1}}, {"C", {2}}});
}
inline DivisorArrangement conic() { return DivisorArrangement(p2(), {{"C", {2}}}); }
inline DivisorArrangement cubic() { return DivisorArrangement(p2(), {{"E", {3}}}); }
inline DivisorArrangement two_quadrics() {
  return DivisorArrangement(p1p1(), {{"D1", {1, 1}}, {"D2", {1, 1}}});
}

// Key with the given pieces, zero elsewhere.
inline ExponentKey key_of(const SeriesContext& ctx, std::vector<int> beta, int zpow,
                          std::vector<int> coh, std::vector<int> sector = {},
                          XMonomial xexp = {}) {
  ExponentKey k = ExponentKey::unit(ctx);
  if (!beta.empty()) k.beta = std::move(beta);
  k.zpow = zpow;
  if (!coh.empty()) k.coh = std::move(coh);
  if (!sector.empty()) k.sector = std::move(sector);
  k.xexp = std::move(xexp);
  return k;
}

// Small random series on the untwisted sector; every draw comes from gen.
class SeriesGenerator {
 public:
  SeriesGenerator(ContextPtr ctx, unsigned seed) : ctx_(std::move(ctx)), gen_(seed) {}

  Rational coefficient() {
    int num = uniform(-9, 9);
    if (num == 0) num = 1;
    return make_rational(num, uniform(1, 5));
  }

  ExponentKey key() {
    ExponentKey k = ExponentKey::unit(*ctx_);
    for (auto& b : k.beta) b = uniform(0, 1);
    k.zpow = uniform(-3, 2);
    for (std::size_t g = 0; g < k.coh.size(); ++g) k.coh[g] = uniform(0, ctx_->ring.generator(g).cap);
    for (auto& l : k.lambda) l = uniform(0, 1);
    if (uniform(0, 3) == 0) k.xexp.emplace_back(XVar{uniform(0, 1), uniform(1, 2)}, uniform(1, 2));
    return k;
  }

  GradedSeries series(int max_terms = 4) {
    GradedSeries s(ctx_);
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) s.add_term(key(), coefficient());
    return s;
  }

  // A pure degree-2 class sum_k c_k P_k, not identically zero.
  GradedSeries linear_class() {
    GradedSeries s(ctx_);
    while (s.is_zero()) {
      for (std::size_t g = 0; g < ctx_->ring.size(); ++g) {
        s += GradedSeries::generator(ctx_, g, Rational(uniform(-3, 3)));
      }
    }
    return s;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  ContextPtr ctx_;
  std::mt19937 gen_;
};

}  // namespace rootstack::testing
