#include "rootstack/identities.hpp"

#include <algorithm>
#include <map>

#include "rootstack/errors.hpp"
#include "rootstack/ifunctions.hpp"
#include "rootstack/invariants.hpp"

namespace rootstack {

GradedSeries pushforward_iota(const GradedSeries& s, const DivisorArrangement& divisors) {
  const ContextPtr& ctx = s.context_ptr();
  if (ctx->n_sectors != divisors.size()) {
    throw ContractError("sector length does not match the number of divisors");
  }
  if (ctx->sector_kind != SectorKind::integer) {
    throw ContractError("pushforward needs integer tangency sectors");
  }
  std::map<unsigned long, GradedSeries> by_mask;
  for (const auto& [key, c] : s.terms()) {
    unsigned long mask = 0;
    for (std::size_t i = 0; i < key.sector.size(); ++i) {
      if (key.sector[i] != 0) mask |= 1UL << i;
    }
    ExponentKey k = key;
    std::fill(k.sector.begin(), k.sector.end(), 0);
    by_mask.try_emplace(mask, GradedSeries(ctx)).first->second.add_term(std::move(k), c);
  }
  GradedSeries out(ctx);
  for (const auto& [mask, part] : by_mask) {
    GradedSeries term = part;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (mask & (1UL << i)) term = term * divisor_series(ctx, divisors[i].cls);
    }
    out += term;
  }
  return out;
}

GradedSeries divisor_derivative(const GradedSeries& s, const DivisorArrangement& divisors,
                                std::size_t i) {
  const ContextPtr& ctx = s.context_ptr();
  const DivisorClass& cls = divisors[i].cls;
  GradedSeries over_z = divisor_series(ctx, cls) * GradedSeries::z_power(ctx, -1);
  GradedSeries out(ctx);
  for (const auto& [key, c] : s.terms()) {
    GradedSeries term = GradedSeries::monomial(ctx, key, c);
    out += term * (over_z + GradedSeries::constant(ctx, pairing(cls, key.beta)));
  }
  return out;
}

GradedSeries local_twisted(const GradedSeries& local, const DivisorArrangement& divisors) {
  const ContextPtr& ctx = local.context_ptr();
  GradedSeries out = local;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    out = exact_divide_linear(out, divisor_series(ctx, divisors[i].cls, -1), i);
  }
  return set_lambda_zero(out);
}

int local_sign(const std::vector<int>& d) {
  int sign = 1;
  for (int v : d) {
    if ((v - 1) % 2 != 0) sign = -sign;
  }
  return sign;
}

namespace {

GradedSeries beta_slice(const GradedSeries& s, const CurveClass& beta) {
  return filter(s, [&](const ExponentKey& key, const Rational&) { return key.beta == beta; });
}

GradedSeries product_class(const ContextPtr& ctx, const DivisorArrangement& divisors) {
  GradedSeries p = GradedSeries::constant(ctx, 1);
  for (const auto& d : divisors.divisors()) p = p * divisor_series(ctx, d.cls);
  return p;
}

void finish(IdentityReport& r) {
  r.first_mismatch = first_difference(r.left, r.right);
  r.pass = !r.first_mismatch;
}

// Invariant-level reading of left = sign * prod D * L: for each z^{-a-1} and
// basis insertion gamma, int gamma * left_a against int gamma * prod D * L_a.
void record_consequences(IdentityReport& r, const GradedSeries& iota_side,
                         const GradedSeries& local_side, const GradedSeries& full_orbifold) {
  if (!mirror_map(full_orbifold).trivial) {
    r.notes.push_back("mirror map nontrivial; invariant-level consequences not recorded");
    return;
  }
  const ContextPtr& ctx = iota_side.context_ptr();
  const AmbientRing& ring = ctx->ring;
  ExponentKey top = ExponentKey::unit(*ctx);
  top.coh = ring.top_monomial();
  int lowest = 0;
  for (const auto& [key, c] : iota_side.terms()) lowest = std::min(lowest, key.zpow);
  for (const auto& [key, c] : local_side.terms()) lowest = std::min(lowest, key.zpow);
  for (int zp = -1; zp >= lowest; --zp) {
    Selector sel;
    sel.beta = r.beta;
    sel.zpow = zp;
    GradedSeries a = coefficient(iota_side, sel);
    GradedSeries b = coefficient(local_side, sel);
    for (const auto& m : ring.monomials()) {
      ExponentKey k = ExponentKey::unit(*ctx);
      k.coh = m;
      GradedSeries gamma = GradedSeries::monomial(ctx, k);
      Rational orb = (gamma * a).at(top);
      Rational loc = (gamma * b).at(top);
      if (orb == 0 && loc == 0) continue;
      r.consequences.push_back({m, -zp - 1, orb, loc});
    }
  }
}

void require_positive(const std::vector<int>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= 0) {
      throw PreconditionError("identity needs D_" + std::to_string(i + 1) + ".beta > 0, got " +
                              std::to_string(d[i]));
    }
  }
}

IdentityReport nonextended_identity(std::string name, const GradedSeries& orbifold,
                                    const TargetSpace& target, const DivisorArrangement& divisors,
                                    const CurveClass& beta, int cap) {
  IdentityReport r(std::move(name), beta, orbifold.context_ptr());
  r.sign = local_sign(divisors.pairings(beta));
  GradedSeries local = local_twisted(beta_slice(i_local(target, divisors, cap), beta), divisors);
  GradedSeries prod = product_class(orbifold.context_ptr(), divisors);
  r.left = pushforward_iota(beta_slice(orbifold, beta), divisors);
  r.right = Rational(r.sign) * (prod * local);
  finish(r);
  if (r.pass) record_consequences(r, r.left, Rational(r.sign) * local * prod, orbifold);
  return r;
}

}  // namespace

IdentityReport check_local_relative_smooth(const TargetSpace& target, const DivisorArrangement& divisor,
                                           const CurveClass& beta) {
  if (divisor.size() != 1) throw ContractError("the smooth-pair identity needs exactly one divisor");
  require_positive(divisor.pairings(beta));
  int cap = target.anticanonical_degree(beta);
  return nonextended_identity("local-relative", i_relative_smooth(target, divisor, cap), target,
                              divisor, beta, cap);
}

IdentityReport check_local_orbifold_nonextended(const TargetSpace& target,
                                                const DivisorArrangement& divisors,
                                                const CurveClass& beta) {
  require_positive(divisors.pairings(beta));
  unsigned long all = (1UL << divisors.size()) - 1;
  if (!intersection_nonempty(target, divisors, all)) {
    throw PreconditionError(
        "the divisors have empty common intersection: the maximal-tangency sector is zero and "
        "the identity is not asserted");
  }
  int cap = target.anticanonical_degree(beta);
  return nonextended_identity("local-orbifold", i_infinity_nonextended(target, divisors, cap),
                              target, divisors, beta, cap);
}

IdentityReport check_local_orbifold_extended(const TargetSpace& target,
                                             const DivisorArrangement& divisors,
                                             const CurveClass& beta) {
  auto d = divisors.pairings(beta);
  require_positive(d);
  int cap = target.anticanonical_degree(beta);
  int m = *std::max_element(d.begin(), d.end());

  GradedSeries extended = i_infinity_extended_h0(target, divisors, m, cap);
  IdentityReport r("local-orbifold-extended", beta, extended.context_ptr());
  r.sign = local_sign(d);

  XMonomial x;
  for (std::size_t i = 0; i < d.size(); ++i) x.emplace_back(XVar{static_cast<int>(i), d[i]}, 1);
  Selector pick;
  pick.beta = beta;
  pick.xexp = x;
  r.left = coefficient(extended, pick);

  GradedSeries local = beta_slice(i_local(target, divisors, cap), beta);
  GradedSeries twisted = local_twisted(local, divisors);
  GradedSeries derived = twisted;
  for (std::size_t i = 0; i < divisors.size(); ++i) derived = divisor_derivative(derived, divisors, i);
  Selector at_beta;
  at_beta.beta = beta;
  r.right = Rational(r.sign) * coefficient(derived, at_beta);
  finish(r);

  const ContextPtr& ctx = extended.context_ptr();
  ExponentKey point = ExponentKey::unit(*ctx);
  point.zpow = -1;
  r.local_point = coefficient(twisted, at_beta).at(point);
  r.orbifold_value = r.left.at(point) * x_factorial_weight(x);
  if (*r.local_point != 0) r.factor = *r.orbifold_value / *r.local_point;
  return r;
}

}  // namespace rootstack
