#pragma once

#include <string>
#include <vector>

#include "rootstack/series.hpp"

namespace rootstack {

// Curve class in the basis dual to the hyperplane classes P_k.
using CurveClass = std::vector<int>;

// Divisor class sum_k c_k P_k.
using DivisorClass = std::vector<int>;

// The product of projective spaces prod_k P^{n_k}.
class TargetSpace {
 public:
  explicit TargetSpace(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  int dimension() const;

  // -K_X = sum_k (n_k + 1) P_k.
  DivisorClass anticanonical() const;
  int anticanonical_degree(const CurveClass& beta) const;

  AmbientRing ring() const;

  // Context shared by every I-function built over this target with n
  // divisors (n sector slots, n equivariant parameters).
  ContextPtr make_context(std::size_t n_divisors, int beta_cap,
                          SectorKind kind = SectorKind::integer) const;

  std::string name() const;

  bool operator==(const TargetSpace&) const = default;

 private:
  std::vector<int> factors_;
};

struct Divisor {
  std::string name;
  DivisorClass cls;
};

// D = D_1 + ... + D_n with each D_i nef.
class DivisorArrangement {
 public:
  DivisorArrangement() = default;
  // Throws ConfigError when a class has the wrong length, a negative
  // coefficient ("divisor not nef on this target") or is zero.
  DivisorArrangement(const TargetSpace& target, std::vector<Divisor> divisors);

  std::size_t size() const { return divisors_.size(); }
  const Divisor& operator[](std::size_t i) const { return divisors_.at(i); }
  const std::vector<Divisor>& divisors() const { return divisors_; }

  DivisorClass total() const;
  // d_i = D_i . beta for every i.
  std::vector<int> pairings(const CurveClass& beta) const;

 private:
  std::vector<Divisor> divisors_;
};

// Root orders r = (r_1, ..., r_n).
class RootData {
 public:
  // Throws ConfigError unless every r_i >= 1 and they are pairwise coprime.
  explicit RootData(std::vector<int> roots);

  const std::vector<int>& values() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  int operator[](std::size_t i) const { return roots_.at(i); }

 private:
  std::vector<int> roots_;
};

// All beta >= 0 with (-K_X).beta <= cap, ordered by anticanonical degree and
// then lexicographically descending: (0,0), (1,0), (0,1), (2,0), ...
std::vector<CurveClass> enumerate_curve_classes(const TargetSpace& target, int cap);

int pairing(const DivisorClass& divisor, const CurveClass& beta);

// sum_k c_k P_k as a series in ctx.
GradedSeries divisor_series(const ContextPtr& ctx, const DivisorClass& divisor,
                            const Rational& scale = 1);

// J_{X,beta}(0, z) Q^beta = z Q^beta prod_k prod_{0<a<=beta_k} (P_k + a z)^{-(n_k+1)}.
GradedSeries base_j_function(const ContextPtr& ctx, const TargetSpace& target,
                             const CurveClass& beta);

struct AssumptionReport {
  bool holds = true;
  std::vector<CurveClass> violations;
};

// #{i : D_i.beta > 0} >= 2 for every beta with D.beta >= 2 and
// (-K_X).beta <= cap.
AssumptionReport check_assumption(const TargetSpace& target, const DivisorArrangement& divisors,
                                  int cap);

bool check_coprime(const std::vector<int>& roots);

bool is_anticanonical(const TargetSpace& target, const DivisorArrangement& divisors);

// Whether the divisors selected by mask (bit i = D_i) meet: their product
// class is nonzero. The empty selection is X itself.
bool intersection_nonempty(const TargetSpace& target, const DivisorArrangement& divisors,
                           unsigned long mask);

// Lookup table of intersection_nonempty over all 2^n masks.
std::vector<bool> intersection_table(const TargetSpace& target, const DivisorArrangement& divisors);

}  // namespace rootstack
