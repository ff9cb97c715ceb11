#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootstack/ambient_ring.hpp"
#include "rootstack/rational.hpp"

namespace rootstack {

// Extended variable x_{ij}: divisor index i (0-based) and contact order j >= 1.
struct XVar {
  int divisor = 0;
  int contact = 1;

  auto operator<=>(const XVar&) const = default;
};

// Monomial in the x_{ij}, sorted by variable, exponents strictly positive.
using XMonomial = std::vector<std::pair<XVar, int>>;

XMonomial x_multiply(const XMonomial& a, const XMonomial& b);
int x_degree(const XMonomial& m);
// prod_{ij} k_ij!, the multinomial weight the extended I-function divides by.
Rational x_factorial_weight(const XMonomial& m);
std::string x_to_string(const XMonomial& m);

// How the sector labels of a series are to be read: integer tangency vectors
// (infinite root stack, relative and local theories) or residues s_i mod r_i
// (finite root stack X_{D,r}).
enum class SectorKind { integer, residue };

// Everything two series must share before they can be combined.
struct SeriesContext {
  AmbientRing ring;
  // Anticanonical coefficients: (-K_X).beta = sum_k beta_weights[k] * beta[k].
  std::vector<int> beta_weights;
  int beta_cap = 0;
  // Lowest retained power of z; nullopt keeps every power.
  std::optional<int> z_floor;
  std::size_t n_sectors = 0;
  std::size_t n_lambda = 0;
  SectorKind sector_kind = SectorKind::integer;

  int beta_weight(std::span<const int> beta) const;

  bool operator==(const SeriesContext&) const = default;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

// Monomial Q^beta z^zpow x^xexp 1_sector P^coh lambda^lambda.
struct ExponentKey {
  std::vector<int> beta;
  int zpow = 0;
  XMonomial xexp;
  std::vector<int> sector;
  std::vector<int> coh;
  std::vector<int> lambda;

  // The key of the constant 1 in a context.
  static ExponentKey unit(const SeriesContext& ctx);

  bool operator==(const ExponentKey&) const = default;
};

// Print order: beta lexicographic, then z-power descending, then the
// remaining components lexicographically.
struct KeyOrder {
  bool operator()(const ExponentKey& a, const ExponentKey& b) const;
};

std::string key_to_string(const ExponentKey& key, const SeriesContext& ctx);

// Sparse exact series. Zero coefficients are never stored and every stored
// key lies within the truncation of its context, so structural equality is
// mathematical equality within the truncation.
class GradedSeries {
 public:
  using TermMap = std::map<ExponentKey, Rational, KeyOrder>;

  explicit GradedSeries(ContextPtr ctx);

  static GradedSeries constant(ContextPtr ctx, const Rational& c);
  static GradedSeries monomial(ContextPtr ctx, ExponentKey key, const Rational& c = 1);
  static GradedSeries z_power(ContextPtr ctx, int power, const Rational& c = 1);
  static GradedSeries generator(ContextPtr ctx, std::size_t k, const Rational& c = 1);
  static GradedSeries lambda(ContextPtr ctx, std::size_t i);
  static GradedSeries novikov(ContextPtr ctx, std::vector<int> beta);
  static GradedSeries x_monomial(ContextPtr ctx, XMonomial m);
  static GradedSeries sector_unit(ContextPtr ctx, std::vector<int> sector);

  const SeriesContext& context() const { return *ctx_; }
  const ContextPtr& context_ptr() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient of an exact key (zero when absent).
  Rational at(const ExponentKey& key) const;

  // Adds c * key. Keys beyond a nilpotency cap, the beta cap or the z floor
  // are dropped; shape mismatches throw ContractError.
  void add_term(ExponentKey key, const Rational& c);

  GradedSeries& operator+=(const GradedSeries& other);
  GradedSeries& operator-=(const GradedSeries& other);
  GradedSeries& operator*=(const Rational& c);

  bool operator==(const GradedSeries& other) const;

 private:
  void check_shape(const ExponentKey& key) const;
  bool within_truncation(const ExponentKey& key) const;

  ContextPtr ctx_;
  TermMap terms_;
};

GradedSeries series_add(const GradedSeries& a, const GradedSeries& b);
GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b);

GradedSeries operator+(const GradedSeries& a, const GradedSeries& b);
GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);
GradedSeries operator-(const GradedSeries& a);
GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
GradedSeries operator*(const Rational& c, const GradedSeries& a);

GradedSeries power(const GradedSeries& s, int exponent);

// c*z + cls, where cls is a degree-2 class (linear in the generators).
GradedSeries linear_factor(const GradedSeries& cls, const Rational& c);

// (c*z + cls)^{-1} = (c z)^{-1} sum_k (-cls/(c z))^k, finite by nilpotency.
// cls must be a pure degree-2 class; c = 0 throws ContractError.
GradedSeries invert_z_linear(const Rational& c, const GradedSeries& cls);

// Exact quotient num / (cls + lambda_i) by synthetic division in lambda_i.
// cls must not involve lambda_i. A nonzero remainder throws DivisibilityError.
GradedSeries exact_divide_linear(const GradedSeries& num, const GradedSeries& cls,
                                 std::size_t lambda_index);

// Partial key: every engaged component is matched exactly and then reset to
// its zero value in the result.
struct Selector {
  std::optional<std::vector<int>> beta;
  std::optional<int> zpow;
  std::optional<XMonomial> xexp;
  std::optional<std::vector<int>> sector;
  std::optional<std::vector<int>> coh;
  std::optional<std::vector<int>> lambda;
};

GradedSeries coefficient(const GradedSeries& s, const Selector& selector);

// Drops every key with a nonzero lambda exponent.
GradedSeries set_lambda_zero(const GradedSeries& s);

// Keeps the terms satisfying pred.
GradedSeries filter(const GradedSeries& s,
                    const std::function<bool(const ExponentKey&, const Rational&)>& pred);

// Re-keys every term; f returns the new key and a scalar multiplier, or
// nullopt to drop the term. Colliding keys are summed.
GradedSeries transform(
    const GradedSeries& s,
    const std::function<std::optional<std::pair<ExponentKey, Rational>>(const ExponentKey&)>& f);

// Same series in another (compatible-shape) context.
GradedSeries rebase(const GradedSeries& s, ContextPtr ctx);

// First key (in print order) where a and b differ.
std::optional<ExponentKey> first_difference(const GradedSeries& a, const GradedSeries& b);

std::string to_string(const GradedSeries& s);

}  // namespace rootstack
