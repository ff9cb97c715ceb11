#include "rootstack/invariants.hpp"

#include <algorithm>
#include <sstream>

#include "rootstack/errors.hpp"
#include "rootstack/parallel.hpp"

namespace rootstack {

namespace {

bool all_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int e) { return e == 0; });
}

// Whether a z^0 term is a bare x_ij on its own sector with coefficient 1.
bool is_extended_insertion(const ExponentKey& key, const Rational& c, const SeriesContext& ctx) {
  if (c != 1 || !all_zero(key.beta) || !all_zero(key.coh) || !all_zero(key.lambda)) return false;
  if (key.xexp.size() != 1 || key.xexp[0].second != 1) return false;
  const XVar& v = key.xexp[0].first;
  for (std::size_t i = 0; i < key.sector.size(); ++i) {
    bool own = static_cast<int>(i) == v.divisor;
    if (!own && key.sector[i] != 0) return false;
    if (own) {
      if (ctx.sector_kind == SectorKind::integer && key.sector[i] != v.contact) return false;
      if (ctx.sector_kind == SectorKind::residue && key.sector[i] == 0) return false;
    }
  }
  return true;
}

}  // namespace

MirrorMapReport mirror_map(const GradedSeries& i_function) {
  const ContextPtr& ctx = i_function.context_ptr();
  MirrorMapReport report{GradedSeries(ctx), GradedSeries(ctx), GradedSeries(ctx), true, {}};
  for (const auto& [key, c] : i_function.terms()) {
    if (key.zpow >= 2) {
      report.positive_tail.add_term(key, c);
    } else if (key.zpow == 1) {
      report.z_linear.add_term(key, c);
    } else if (key.zpow == 0) {
      report.z_zero.add_term(key, c);
    }
  }
  if (!report.positive_tail.is_zero()) {
    report.trivial = false;
    report.reasons.push_back("positive powers of z beyond z^1, first at " +
                             key_to_string(report.positive_tail.terms().begin()->first, *ctx));
  }
  if (!(report.z_linear == GradedSeries::z_power(ctx, 1))) {
    report.trivial = false;
    auto diff = first_difference(report.z_linear, GradedSeries::z_power(ctx, 1));
    report.reasons.push_back("z^1 part is not z*1, first difference at " +
                             key_to_string(*diff, *ctx));
  }
  for (const auto& [key, c] : report.z_zero.terms()) {
    if (!is_extended_insertion(key, c, *ctx)) {
      report.trivial = false;
      report.reasons.push_back("z^0 term (" + to_short_string(c) + ") " + key_to_string(key, *ctx) +
                               " is not a bare extended insertion");
    }
  }
  return report;
}

Rational InvariantTable::at(const InvariantKey& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? Rational(0) : it->second;
}

InvariantTable extract_invariants(const GradedSeries& i_function,
                                  const std::vector<DivisorClass>& divisors) {
  MirrorMapReport mm = mirror_map(i_function);
  if (!mm.trivial) {
    std::string why = mm.reasons.empty() ? std::string() : ": " + mm.reasons.front();
    throw MirrorMapError("mirror map nontrivial; Birkhoff factorization unsupported" + why);
  }
  const ContextPtr& ctx = i_function.context_ptr();
  const AmbientRing& ring = ctx->ring;
  InvariantTable table{ctx, {}, {}};

  // Group the z^{<0} terms by everything but the cohomology class.
  struct Group {
    CurveClass beta;
    XMonomial xexp;
    int zpow;
    std::vector<int> sector;
    auto operator<=>(const Group&) const = default;
  };
  std::map<Group, GradedSeries> groups;
  std::size_t skipped_lambda = 0;
  std::size_t skipped_residue = 0;
  for (const auto& [key, c] : i_function.terms()) {
    if (key.zpow >= 0) continue;
    if (!all_zero(key.lambda)) {
      ++skipped_lambda;
      continue;
    }
    if (ctx->sector_kind == SectorKind::residue && !all_zero(key.sector)) {
      ++skipped_residue;
      continue;
    }
    Group g{key.beta, key.xexp, key.zpow, key.sector};
    auto it = groups.try_emplace(g, GradedSeries(ctx)).first;
    ExponentKey k = ExponentKey::unit(*ctx);
    k.coh = key.coh;
    it->second.add_term(std::move(k), c);
  }
  if (skipped_lambda) {
    table.flags.push_back("skipped " + std::to_string(skipped_lambda) +
                          " equivariant terms (set lambda = 0 first)");
  }
  if (skipped_residue) {
    table.flags.push_back("skipped " + std::to_string(skipped_residue) +
                          " finite-root twisted-sector terms (orbifold pairing not modelled)");
  }

  std::vector<GradedSeries> basis;
  auto monomials = ring.monomials();
  for (const auto& m : monomials) {
    ExponentKey k = ExponentKey::unit(*ctx);
    k.coh = m;
    basis.push_back(GradedSeries::monomial(ctx, std::move(k)));
  }
  ExponentKey top = ExponentKey::unit(*ctx);
  top.coh = ring.top_monomial();

  for (const auto& [g, delta] : groups) {
    GradedSeries cls = delta;
    if (!all_zero(g.sector)) {
      if (divisors.size() != g.sector.size()) {
        throw ContractError("twisted-sector extraction needs the divisor classes");
      }
      for (std::size_t i = 0; i < g.sector.size(); ++i) {
        if (g.sector[i] != 0) cls = cls * divisor_series(ctx, divisors[i]);
      }
    }
    Rational weight = x_factorial_weight(g.xexp);
    for (std::size_t t = 0; t < basis.size(); ++t) {
      Rational value = (basis[t] * cls).at(top);
      if (value == 0) continue;
      table.entries[{g.beta, g.xexp, monomials[t], -g.zpow - 1, g.sector}] = value * weight;
    }
  }
  return table;
}

GradedSeries reassemble(const InvariantTable& table) {
  GradedSeries out(table.ctx);
  for (const auto& [key, value] : table.entries) {
    if (!all_zero(key.sector)) continue;
    ExponentKey k = ExponentKey::unit(*table.ctx);
    k.beta = key.beta;
    k.xexp = key.xexp;
    k.zpow = -key.psi - 1;
    k.coh = table.ctx->ring.dual(key.insertion);
    out.add_term(std::move(k), value / x_factorial_weight(key.xexp));
  }
  return out;
}

Rational n_orb(const TargetSpace& target, const DivisorArrangement& divisors,
               const CurveClass& beta) {
  if (!is_anticanonical(target, divisors)) {
    throw PreconditionError("N^orb needs the divisors to sum to -K_X");
  }
  auto d = divisors.pairings(beta);
  int total = 0;
  for (int v : d) total += v;
  if (total < 2) {
    throw PreconditionError("N^orb needs D.beta >= 2, got " + std::to_string(total));
  }
  int cap = target.anticanonical_degree(beta);
  if (!check_assumption(target, divisors, cap).holds) {
    throw PreconditionError("positivity assumption fails within (-K).beta = " + std::to_string(cap));
  }
  ExtendedData ones;
  ones.contacts.assign(divisors.size(), {1});
  GradedSeries series = i_infinity_extended_h0(target, divisors, ones, cap);
  InvariantTable table = extract_invariants(series);
  InvariantKey key;
  key.beta = beta;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0) key.xexp.emplace_back(XVar{static_cast<int>(i), 1}, d[i]);
  }
  key.insertion = target.ring().top_monomial();
  key.psi = total - 2;
  key.sector.assign(divisors.size(), 0);
  return table.at(key);
}

namespace {

int residue(int value, int modulus) { return ((value % modulus) + modulus) % modulus; }

// Finite-r series -> large-r shape: sector residues become the integer
// tangency s_i = sum_j j k_ij - d_i and the coefficient is divided by
// prod_{s_i<0} r_i.
GradedSeries to_limit(const GradedSeries& finite, const DivisorArrangement& divisors,
                      const RootData& roots, const ContextPtr& limit_ctx) {
  GradedSeries out(limit_ctx);
  for (const auto& [key, c] : finite.terms()) {
    std::vector<int> s = divisors.pairings(key.beta);
    for (int& v : s) v = -v;
    for (const auto& [var, k] : key.xexp) s[static_cast<std::size_t>(var.divisor)] += var.contact * k;
    Rational scale = 1;
    ExponentKey k = key;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (std::abs(s[i]) >= roots[i]) {
        throw PreconditionError("root order r_" + std::to_string(i + 1) + " = " +
                                std::to_string(roots[i]) + " does not exceed |s_i| = " +
                                std::to_string(std::abs(s[i])) + " at " +
                                key_to_string(key, finite.context()));
      }
      if (key.sector[i] != residue(s[i], roots[i])) {
        throw ContractError("unexpected sector residue at " + key_to_string(key, finite.context()));
      }
      k.sector[i] = s[i];
      if (s[i] < 0) scale *= roots[i];
    }
    out.add_term(std::move(k), c / scale);
  }
  return out;
}

GradedSeries beta_slice(const GradedSeries& s, const CurveClass& beta) {
  return filter(s, [&](const ExponentKey& key, const Rational&) { return key.beta == beta; });
}

void check_roots_exceed(const DivisorArrangement& divisors, const CurveClass& beta,
                        const RootData& roots) {
  auto d = divisors.pairings(beta);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0 && roots[i] <= d[i]) {
      throw PreconditionError("stabilization needs r_" + std::to_string(i + 1) + " = " +
                              std::to_string(roots[i]) + " > d_" + std::to_string(i + 1) + " = " +
                              std::to_string(d[i]));
    }
  }
}

StabilizationReport compare_limits(const std::vector<CurveClass>& betas,
                                   const std::vector<RootData>& roots,
                                   const std::vector<GradedSeries>& rescaled,
                                   const GradedSeries& limit) {
  StabilizationReport report;
  for (std::size_t t = 0; t < roots.size(); ++t) {
    for (const auto& beta : betas) {
      StabilizationEntry e{roots[t].values(), beta, false, beta_slice(rescaled[t], beta),
                           beta_slice(limit, beta), std::nullopt};
      e.mismatch = first_difference(e.rescaled, e.limit);
      e.pass = !e.mismatch;
      report.pass = report.pass && e.pass;
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

}  // namespace

StabilizationReport stabilization_check(const TargetSpace& target,
                                        const DivisorArrangement& divisors,
                                        const std::vector<CurveClass>& betas,
                                        const std::vector<RootData>& roots) {
  int cap = 0;
  for (const auto& beta : betas) {
    cap = std::max(cap, target.anticanonical_degree(beta));
    for (const auto& r : roots) check_roots_exceed(divisors, beta, r);
  }
  GradedSeries limit = i_infinity_nonextended(target, divisors, cap);
  std::vector<GradedSeries> rescaled(roots.size(), GradedSeries(limit.context_ptr()));
  for (std::size_t t = 0; t < roots.size(); ++t) {
    GradedSeries finite = i_root_nonextended(target, divisors, roots[t], cap);
    rescaled[t] = to_limit(finite, divisors, roots[t], limit.context_ptr());
  }
  return compare_limits(betas, roots, rescaled, limit);
}

StabilizationReport stabilization_check(const TargetSpace& target,
                                        const DivisorArrangement& divisors, int cap,
                                        const std::vector<RootData>& roots) {
  std::vector<CurveClass> betas;
  for (const auto& beta : enumerate_curve_classes(target, cap)) {
    auto d = divisors.pairings(beta);
    bool ok = true;
    for (const auto& r : roots) {
      for (std::size_t i = 0; i < d.size(); ++i) ok = ok && (d[i] == 0 || r[i] > d[i]);
    }
    if (ok) betas.push_back(beta);
  }
  return stabilization_check(target, divisors, betas, roots);
}

StabilizationReport extended_stabilization_check(const TargetSpace& target,
                                                 const DivisorArrangement& divisors,
                                                 const ExtendedData& extended, int cap,
                                                 const std::vector<RootData>& roots) {
  GradedSeries limit = i_infinity_extended(target, divisors, extended, cap);
  std::vector<GradedSeries> rescaled(roots.size(), GradedSeries(limit.context_ptr()));
  for (std::size_t t = 0; t < roots.size(); ++t) {
    GradedSeries finite = i_root_extended(target, divisors, roots[t], extended, cap);
    rescaled[t] = to_limit(finite, divisors, roots[t], limit.context_ptr());
  }
  return compare_limits(enumerate_curve_classes(target, cap), roots, rescaled, limit);
}

}  // namespace rootstack
