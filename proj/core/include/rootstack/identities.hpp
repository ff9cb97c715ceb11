#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootstack/series.hpp"
#include "rootstack/targets.hpp"

namespace rootstack {

// <[iota^* gamma]_d psi^a> on the log/orbifold side against
// <(prod D_i) gamma psi^a> on the local side, for one insertion gamma.
struct Consequence {
  std::vector<int> insertion;
  int psi = 0;
  Rational orbifold;
  Rational local;
};

struct IdentityReport {
  IdentityReport(std::string name_, CurveClass beta_, const ContextPtr& ctx)
      : name(std::move(name_)), beta(std::move(beta_)), left(ctx), right(ctx) {}

  std::string name;
  CurveClass beta;
  GradedSeries left;
  GradedSeries right;
  int sign = 1;
  bool pass = false;
  std::optional<ExponentKey> first_mismatch;
  std::vector<Consequence> consequences;
  // Extended identities: the local <[pt]>, the orbifold invariant with one
  // maximal-contact marking per divisor and an interior [pt], and their ratio.
  std::optional<Rational> local_point;
  std::optional<Rational> orbifold_value;
  std::optional<Rational> factor;
  std::vector<std::string> notes;
};

// [delta]_s -> delta * prod_{s_i != 0} D_i on the untwisted sector.
GradedSeries pushforward_iota(const GradedSeries& s, const DivisorArrangement& divisors);

// Each beta-slice times (D_i + d_i z)/z with d_i = D_i.beta.
GradedSeries divisor_derivative(const GradedSeries& s, const DivisorArrangement& divisors,
                                std::size_t i);

// [I_local / prod_i (-D_i + l_i)]_{l=0}: the local I-function in the twisted
// pairing normalization. Throws DivisibilityError if a quotient is not exact.
GradedSeries local_twisted(const GradedSeries& local, const DivisorArrangement& divisors);

// prod_i (-1)^{d_i - 1}.
int local_sign(const std::vector<int>& d);

// iota_! I_{(X,D),beta} = (-1)^{d-1} D [I_{O(-D),beta} / (-D+l)]_{l=0}, n = 1, d > 0.
IdentityReport check_local_relative_smooth(const TargetSpace& target, const DivisorArrangement& divisor,
                                           const CurveClass& beta);

// iota_! I_{X_{D,inf},beta} = prod(-1)^{d_i-1} prod D_i [I_local,beta / prod(-D_i+l_i)]_{l=0}.
// Needs every d_i > 0 and a nonempty intersection of all D_i.
IdentityReport check_local_orbifold_nonextended(const TargetSpace& target,
                                                const DivisorArrangement& divisors,
                                                const CurveClass& beta);

// prod_i x_{i d_i}-coefficient of I_{X_{D,inf},0,beta} =
// prod(-1)^{d_i-1} [prod_i (D_i + d_i z)/z * I_local,beta / prod(-D_i+l_i)]_{l=0}.
// Needs every d_i > 0.
IdentityReport check_local_orbifold_extended(const TargetSpace& target,
                                             const DivisorArrangement& divisors,
                                             const CurveClass& beta);

}  // namespace rootstack
