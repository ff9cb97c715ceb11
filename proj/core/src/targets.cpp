#include "rootstack/targets.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rootstack/errors.hpp"

namespace rootstack {

TargetSpace::TargetSpace(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ConfigError("target needs at least one projective factor");
  for (int n : factors_) {
    if (n < 1) throw ConfigError("projective factor dimensions must be positive");
  }
}

int TargetSpace::dimension() const { return std::accumulate(factors_.begin(), factors_.end(), 0); }

DivisorClass TargetSpace::anticanonical() const {
  DivisorClass k;
  k.reserve(factors_.size());
  for (int n : factors_) k.push_back(n + 1);
  return k;
}

int TargetSpace::anticanonical_degree(const CurveClass& beta) const {
  return pairing(anticanonical(), beta);
}

AmbientRing TargetSpace::ring() const {
  std::vector<Generator> gens;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    std::string name = factors_.size() == 1 ? "P" : "P" + std::to_string(k + 1);
    gens.push_back({name, factors_[k]});
  }
  return AmbientRing(std::move(gens));
}

ContextPtr TargetSpace::make_context(std::size_t n_divisors, int beta_cap, SectorKind kind) const {
  auto ctx = std::make_shared<SeriesContext>();
  ctx->ring = ring();
  ctx->beta_weights = anticanonical();
  ctx->beta_cap = beta_cap;
  ctx->n_sectors = n_divisors;
  ctx->n_lambda = n_divisors;
  ctx->sector_kind = kind;
  return ctx;
}

std::string TargetSpace::name() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) os << 'x';
    os << "P^" << factors_[k];
  }
  return os.str();
}

DivisorArrangement::DivisorArrangement(const TargetSpace& target, std::vector<Divisor> divisors)
    : divisors_(std::move(divisors)) {
  if (divisors_.empty()) throw ConfigError("arrangement needs at least one divisor");
  for (const auto& d : divisors_) {
    if (d.cls.size() != target.rank()) {
      throw ConfigError("divisor '" + d.name + "' has " + std::to_string(d.cls.size()) +
                        " coefficients, target has " + std::to_string(target.rank()) +
                        " factors");
    }
    if (std::any_of(d.cls.begin(), d.cls.end(), [](int c) { return c < 0; })) {
      throw ConfigError("divisor '" + d.name + "' not nef on this target");
    }
    if (std::all_of(d.cls.begin(), d.cls.end(), [](int c) { return c == 0; })) {
      throw ConfigError("divisor '" + d.name + "' has the zero class");
    }
  }
}

DivisorClass DivisorArrangement::total() const {
  DivisorClass sum(divisors_.front().cls.size(), 0);
  for (const auto& d : divisors_) {
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += d.cls[k];
  }
  return sum;
}

std::vector<int> DivisorArrangement::pairings(const CurveClass& beta) const {
  std::vector<int> out;
  out.reserve(divisors_.size());
  for (const auto& d : divisors_) out.push_back(pairing(d.cls, beta));
  return out;
}

RootData::RootData(std::vector<int> roots) : roots_(std::move(roots)) {
  for (int r : roots_) {
    if (r < 1) throw ConfigError("root orders must be positive integers");
  }
  if (!check_coprime(roots_)) throw ConfigError("roots must be pairwise coprime");
}

namespace {

void enumerate_rec(const std::vector<int>& weights, std::size_t k, int budget, CurveClass& current,
                   std::vector<CurveClass>& out) {
  if (k == weights.size()) {
    out.push_back(current);
    return;
  }
  for (int b = 0; b * weights[k] <= budget; ++b) {
    current[k] = b;
    enumerate_rec(weights, k + 1, budget - b * weights[k], current, out);
  }
  current[k] = 0;
}

}  // namespace

std::vector<CurveClass> enumerate_curve_classes(const TargetSpace& target, int cap) {
  std::vector<CurveClass> out;
  if (cap < 0) return out;
  DivisorClass weights = target.anticanonical();
  CurveClass current(weights.size(), 0);
  enumerate_rec(weights, 0, cap, current, out);
  std::sort(out.begin(), out.end(), [&](const CurveClass& a, const CurveClass& b) {
    int wa = pairing(weights, a);
    int wb = pairing(weights, b);
    if (wa != wb) return wa < wb;
    return a > b;
  });
  return out;
}

int pairing(const DivisorClass& divisor, const CurveClass& beta) {
  if (divisor.size() != beta.size()) throw ContractError("divisor and curve class ranks differ");
  int s = 0;
  for (std::size_t k = 0; k < beta.size(); ++k) s += divisor[k] * beta[k];
  return s;
}

GradedSeries divisor_series(const ContextPtr& ctx, const DivisorClass& divisor,
                            const Rational& scale) {
  GradedSeries s(ctx);
  for (std::size_t k = 0; k < divisor.size(); ++k) {
    if (divisor[k] != 0) s += GradedSeries::generator(ctx, k, scale * divisor[k]);
  }
  return s;
}

GradedSeries base_j_function(const ContextPtr& ctx, const TargetSpace& target,
                             const CurveClass& beta) {
  if (beta.size() != target.rank()) throw ContractError("curve class rank mismatch");
  GradedSeries j = GradedSeries::novikov(ctx, beta);
  j = j * GradedSeries::z_power(ctx, 1);
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k] < 0) throw ContractError("curve class is not effective");
    GradedSeries pk = GradedSeries::generator(ctx, k);
    for (int a = 1; a <= beta[k]; ++a) {
      j = j * power(invert_z_linear(a, pk), target.factors()[k] + 1);
    }
  }
  return j;
}

AssumptionReport check_assumption(const TargetSpace& target, const DivisorArrangement& divisors,
                                  int cap) {
  AssumptionReport report;
  DivisorClass total = divisors.total();
  for (const auto& beta : enumerate_curve_classes(target, cap)) {
    if (pairing(total, beta) < 2) continue;
    auto d = divisors.pairings(beta);
    auto positive = std::count_if(d.begin(), d.end(), [](int v) { return v > 0; });
    if (positive < 2) {
      report.holds = false;
      report.violations.push_back(beta);
    }
  }
  return report;
}

bool check_coprime(const std::vector<int>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::gcd(roots[i], roots[j]) != 1) return false;
    }
  }
  return true;
}

bool is_anticanonical(const TargetSpace& target, const DivisorArrangement& divisors) {
  return divisors.total() == target.anticanonical();
}

bool intersection_nonempty(const TargetSpace& target, const DivisorArrangement& divisors,
                           unsigned long mask) {
  ContextPtr ctx = target.make_context(divisors.size(), 0);
  GradedSeries product = GradedSeries::constant(ctx, 1);
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (mask & (1UL << i)) product = product * divisor_series(ctx, divisors[i].cls);
  }
  return !product.is_zero();
}

std::vector<bool> intersection_table(const TargetSpace& target, const DivisorArrangement& divisors) {
  if (divisors.size() > 20) throw ContractError("too many divisors for an intersection table");
  std::vector<bool> table(1UL << divisors.size());
  for (unsigned long mask = 0; mask < table.size(); ++mask) {
    table[mask] = intersection_nonempty(target, divisors, mask);
  }
  return table;
}

}  // namespace rootstack
