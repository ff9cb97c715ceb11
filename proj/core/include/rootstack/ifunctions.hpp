#pragma once

#include <vector>

#include "rootstack/series.hpp"
#include "rootstack/targets.hpp"

namespace rootstack {

// Extended variables x_{ij}: for divisor i the active contact orders j (the
// age of x_{ij} is j/r_i). max_x_degree bounds the total x-degree kept by the
// functions whose x-dependence is unbounded at fixed beta.
struct ExtendedData {
  std::vector<std::vector<int>> contacts;
  int max_x_degree = 0;

  // Contact orders {1..m} on each of n divisors.
  static ExtendedData uniform(std::size_t n, int m, int max_x_degree = 0);

  int max_contact() const;
  void validate(std::size_t n_divisors) const;
};

// Sum over beta of J_beta Q^beta prod_i prod_{0<a<=d_i}(D_i+az) /
// prod_{<b>=<d_i/r_i>, 0<b<=d_i/r_i}(D_i/r_i+bz), on the residue sector
// (-d_i mod r_i).
GradedSeries i_root_nonextended(const TargetSpace& target, const DivisorArrangement& divisors,
                                const RootData& roots, int cap);

// The S-extended version with a_ij = j, summed over every k with total
// x-degree <= S.max_x_degree. Sector residues are (sum_j j k_ij - d_i) mod r_i.
GradedSeries i_root_extended(const TargetSpace& target, const DivisorArrangement& divisors,
                             const RootData& roots, const ExtendedData& extended, int cap);

// Large-r limit: J_beta Q^beta prod_i prod_{0<a<d_i}(D_i+az) [1]_{-d}.
GradedSeries i_infinity_nonextended(const TargetSpace& target, const DivisorArrangement& divisors,
                                    int cap);

// Large-r limit of i_root_extended on every sector. With s_i = sum_j j k_ij - d_i
// the factor of divisor i is prod_{0<a<=d_i}(D_i+az), omitting a = -s_i when
// s_i < 0, on sector s.
GradedSeries i_infinity_extended(const TargetSpace& target, const DivisorArrangement& divisors,
                                 const ExtendedData& extended, int cap);

// The H^*(X)-valued part of i_infinity_extended: the k with sum_j j k_ij = d_i.
// Throws IncompletenessError when some beta in the cap has d_i > m.
GradedSeries i_infinity_extended_h0(const TargetSpace& target, const DivisorArrangement& divisors,
                                    int m, int cap);
// Same with an explicit contact set; no completeness check.
GradedSeries i_infinity_extended_h0(const TargetSpace& target, const DivisorArrangement& divisors,
                                    const ExtendedData& extended, int cap);

// Smooth pair (X, D), n = 1: J_beta Q^beta prod_{0<a<=d-1}(D+az) [1]_{-d}.
GradedSeries i_relative_smooth(const TargetSpace& target, const DivisorArrangement& divisor,
                               int cap);
// H^*(X)-valued extended relative I-function with variables x_1..x_m.
GradedSeries i_relative_extended_h0(const TargetSpace& target, const DivisorArrangement& divisor,
                                    int m, int cap);

// Local I-function of (+)_i O(-D_i): J_beta Q^beta prod_i prod_{0<=a<d_i}(-D_i+l_i-az).
GradedSeries i_local(const TargetSpace& target, const DivisorArrangement& divisors, int cap);

// prod_{lo<=a<=hi}(cls + a z); empty products give 1.
GradedSeries rising_product(const GradedSeries& cls, int lo, int hi);

}  // namespace rootstack
