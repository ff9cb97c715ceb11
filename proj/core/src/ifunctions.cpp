#include "rootstack/ifunctions.hpp"

#include <algorithm>
#include <sstream>

#include "rootstack/errors.hpp"
#include "rootstack/parallel.hpp"

namespace rootstack {

ExtendedData ExtendedData::uniform(std::size_t n, int m, int max_x_degree) {
  ExtendedData s;
  std::vector<int> orders;
  for (int j = 1; j <= m; ++j) orders.push_back(j);
  s.contacts.assign(n, orders);
  s.max_x_degree = max_x_degree;
  return s;
}

int ExtendedData::max_contact() const {
  int m = 0;
  for (const auto& c : contacts) {
    for (int j : c) m = std::max(m, j);
  }
  return m;
}

void ExtendedData::validate(std::size_t n_divisors) const {
  if (contacts.size() != n_divisors) {
    throw ConfigError("extended data lists " + std::to_string(contacts.size()) +
                      " divisors, arrangement has " + std::to_string(n_divisors));
  }
  for (const auto& c : contacts) {
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (c[t] < 1) throw ConfigError("contact orders must be positive");
      if (t && c[t] <= c[t - 1]) throw ConfigError("contact orders must be strictly increasing");
    }
  }
  if (max_x_degree < 0) throw ConfigError("max_x_degree must be nonnegative");
}

GradedSeries rising_product(const GradedSeries& cls, int lo, int hi) {
  GradedSeries out = GradedSeries::constant(cls.context_ptr(), 1);
  for (int a = lo; a <= hi; ++a) out = out * linear_factor(cls, a);
  return out;
}

namespace {

// One monomial prod x_ij^k_ij with its bookkeeping.
struct XChoice {
  XMonomial monomial;
  std::vector<int> weighted;  // sum_j j k_ij per divisor
  int degree = 0;
  Rational factorials = 1;
};

struct FlatVar {
  int divisor;
  int contact;
};

std::vector<FlatVar> flatten(const ExtendedData& s) {
  std::vector<FlatVar> vars;
  for (std::size_t i = 0; i < s.contacts.size(); ++i) {
    for (int j : s.contacts[i]) vars.push_back({static_cast<int>(i), j});
  }
  return vars;
}

void choose_rec(const std::vector<FlatVar>& vars, std::size_t t, int budget,
                const std::vector<int>* exact, XChoice& current, std::vector<XChoice>& out) {
  if (t == vars.size()) {
    if (exact && current.weighted != *exact) return;
    out.push_back(current);
    return;
  }
  const FlatVar& v = vars[t];
  int limit = budget;
  if (exact) {
    limit = ((*exact)[static_cast<std::size_t>(v.divisor)] -
             current.weighted[static_cast<std::size_t>(v.divisor)]) /
            v.contact;
  }
  for (int k = 0; k <= limit; ++k) {
    XChoice next = current;
    if (k > 0) {
      next.monomial.emplace_back(XVar{v.divisor, v.contact}, k);
      next.weighted[static_cast<std::size_t>(v.divisor)] += v.contact * k;
      next.degree += k;
      next.factorials *= factorial(static_cast<unsigned long>(k));
    }
    choose_rec(vars, t + 1, budget - k, exact, next, out);
  }
}

// Every x-monomial of total degree <= max_degree.
std::vector<XChoice> bounded_choices(const ExtendedData& s, int max_degree) {
  std::vector<XChoice> out;
  XChoice start;
  start.weighted.assign(s.contacts.size(), 0);
  choose_rec(flatten(s), 0, max_degree, nullptr, start, out);
  return out;
}

// Every x-monomial with sum_j j k_ij = d_i for all i.
std::vector<XChoice> exact_choices(const ExtendedData& s, const std::vector<int>& d) {
  std::vector<XChoice> out;
  XChoice start;
  start.weighted.assign(s.contacts.size(), 0);
  int budget = 0;
  for (int v : d) budget += v;
  choose_rec(flatten(s), 0, budget, &d, start, out);
  return out;
}

GradedSeries x_weight(const ContextPtr& ctx, const XChoice& choice) {
  ExponentKey key = ExponentKey::unit(*ctx);
  key.xexp = choice.monomial;
  key.zpow = -choice.degree;
  return GradedSeries::monomial(ctx, std::move(key), 1 / choice.factorials);
}

// Shared per-job data: context, divisor classes, the intersection table.
struct Job {
  const TargetSpace& target;
  const DivisorArrangement& divisors;
  ContextPtr ctx;
  std::vector<GradedSeries> classes;
  std::vector<bool> meets;
  std::vector<CurveClass> betas;

  Job(const TargetSpace& x, const DivisorArrangement& d, int cap, SectorKind kind)
      : target(x), divisors(d), ctx(x.make_context(d.size(), cap, kind)) {
    for (const auto& div : d.divisors()) classes.push_back(divisor_series(ctx, div.cls));
    meets = intersection_table(x, d);
    betas = enumerate_curve_classes(x, cap);
  }

  // Whether the sector whose nonzero entries are flagged lives on a nonempty
  // intersection of divisors.
  bool sector_alive(const std::vector<int>& sector) const {
    unsigned long mask = 0;
    for (std::size_t i = 0; i < sector.size(); ++i) {
      if (sector[i] != 0) mask |= 1UL << i;
    }
    return meets[mask];
  }

  GradedSeries on_sector(const GradedSeries& s, const std::vector<int>& sector) const {
    if (!sector_alive(sector)) return GradedSeries(ctx);
    return transform(s, [&](const ExponentKey& key) -> std::optional<std::pair<ExponentKey, Rational>> {
      ExponentKey k = key;
      k.sector = sector;
      return std::make_pair(std::move(k), Rational(1));
    });
  }

  // Builds every beta-slice with body(beta, d, J_beta Q^beta) in parallel and
  // sums them in enumeration order.
  template <class Body>
  GradedSeries assemble(Body body) const {
    std::vector<GradedSeries> slices(betas.size(), GradedSeries(ctx));
    parallel_for(betas.size(), [&](std::size_t t) {
      const CurveClass& beta = betas[t];
      GradedSeries j = base_j_function(ctx, target, beta);
      slices[t] = body(beta, divisors.pairings(beta), j);
    });
    GradedSeries out(ctx);
    for (const auto& s : slices) out += s;
    return out;
  }
};

int residue(int value, int modulus) { return ((value % modulus) + modulus) % modulus; }

// The r-dependent hypergeometric ratio of the root-stack I-function for one
// divisor with e = num / r: 1/prod_{0<b<=e, b=e mod 1}(cls/r + bz) when e >= 0,
// prod_{e<b<=0, b=e mod 1}(cls/r + bz) when e < 0.
GradedSeries root_ratio(const GradedSeries& cls, int num, int r) {
  GradedSeries scaled = make_rational(1, r) * cls;
  GradedSeries out = GradedSeries::constant(cls.context_ptr(), 1);
  Rational e = make_rational(num, r);
  if (num >= 0) {
    for (Rational b = e; b > 0; b -= 1) out = out * invert_z_linear(b, scaled);
  } else {
    for (Rational b = e + 1; b <= 0; b += 1) out = out * linear_factor(scaled, b);
  }
  return out;
}

void check_root_count(const DivisorArrangement& divisors, const RootData& roots) {
  if (roots.size() != divisors.size()) {
    throw ConfigError("got " + std::to_string(roots.size()) + " root orders for " +
                      std::to_string(divisors.size()) + " divisors");
  }
}

std::string beta_string(const CurveClass& beta) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < beta.size(); ++k) os << (k ? "," : "") << beta[k];
  os << ')';
  return os.str();
}

}  // namespace

GradedSeries i_root_nonextended(const TargetSpace& target, const DivisorArrangement& divisors,
                                const RootData& roots, int cap) {
  check_root_count(divisors, roots);
  Job job(target, divisors, cap, SectorKind::residue);
  return job.assemble([&](const CurveClass&, const std::vector<int>& d, const GradedSeries& j) {
    GradedSeries slice = j;
    std::vector<int> sector(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      slice = slice * rising_product(job.classes[i], 1, d[i]) *
              root_ratio(job.classes[i], d[i], roots[i]);
      sector[i] = residue(-d[i], roots[i]);
    }
    return job.on_sector(slice, sector);
  });
}

GradedSeries i_root_extended(const TargetSpace& target, const DivisorArrangement& divisors,
                             const RootData& roots, const ExtendedData& extended, int cap) {
  check_root_count(divisors, roots);
  extended.validate(divisors.size());
  Job job(target, divisors, cap, SectorKind::residue);
  auto choices = bounded_choices(extended, extended.max_x_degree);
  return job.assemble([&](const CurveClass&, const std::vector<int>& d, const GradedSeries& j) {
    GradedSeries base = j;
    for (std::size_t i = 0; i < d.size(); ++i) base = base * rising_product(job.classes[i], 1, d[i]);
    GradedSeries out(job.ctx);
    std::vector<int> sector(d.size());
    for (const auto& choice : choices) {
      GradedSeries term = base * x_weight(job.ctx, choice);
      for (std::size_t i = 0; i < d.size(); ++i) {
        int num = d[i] - choice.weighted[i];
        term = term * root_ratio(job.classes[i], num, roots[i]);
        sector[i] = residue(-num, roots[i]);
      }
      out += job.on_sector(term, sector);
    }
    return out;
  });
}

GradedSeries i_infinity_nonextended(const TargetSpace& target, const DivisorArrangement& divisors,
                                    int cap) {
  Job job(target, divisors, cap, SectorKind::integer);
  return job.assemble([&](const CurveClass&, const std::vector<int>& d, const GradedSeries& j) {
    GradedSeries slice = j;
    std::vector<int> sector(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      slice = slice * rising_product(job.classes[i], 1, d[i] - 1);
      sector[i] = -d[i];
    }
    return job.on_sector(slice, sector);
  });
}

GradedSeries i_infinity_extended(const TargetSpace& target, const DivisorArrangement& divisors,
                                 const ExtendedData& extended, int cap) {
  extended.validate(divisors.size());
  Job job(target, divisors, cap, SectorKind::integer);
  auto choices = bounded_choices(extended, extended.max_x_degree);
  return job.assemble([&](const CurveClass&, const std::vector<int>& d, const GradedSeries& j) {
    GradedSeries out(job.ctx);
    std::vector<int> sector(d.size());
    for (const auto& choice : choices) {
      GradedSeries term = j * x_weight(job.ctx, choice);
      for (std::size_t i = 0; i < d.size(); ++i) {
        int s = choice.weighted[i] - d[i];
        if (s < 0) {
          int skip = -s;
          term = term * rising_product(job.classes[i], 1, skip - 1) *
                 rising_product(job.classes[i], skip + 1, d[i]);
        } else {
          term = term * rising_product(job.classes[i], 1, d[i]);
        }
        sector[i] = s;
      }
      out += job.on_sector(term, sector);
    }
    return out;
  });
}

GradedSeries i_infinity_extended_h0(const TargetSpace& target, const DivisorArrangement& divisors,
                                    int m, int cap) {
  if (m < 1) throw ConfigError("extended data bound m must be positive");
  for (const auto& beta : enumerate_curve_classes(target, cap)) {
    auto d = divisors.pairings(beta);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] > m) {
        throw IncompletenessError("extended data m = " + std::to_string(m) +
                                  " is smaller than D_" + std::to_string(i + 1) + ".beta = " +
                                  std::to_string(d[i]) + " at beta = " + beta_string(beta));
      }
    }
  }
  return i_infinity_extended_h0(target, divisors, ExtendedData::uniform(divisors.size(), m), cap);
}

GradedSeries i_infinity_extended_h0(const TargetSpace& target, const DivisorArrangement& divisors,
                                    const ExtendedData& extended, int cap) {
  extended.validate(divisors.size());
  Job job(target, divisors, cap, SectorKind::integer);
  return job.assemble([&](const CurveClass&, const std::vector<int>& d, const GradedSeries& j) {
    GradedSeries base = j;
    for (std::size_t i = 0; i < d.size(); ++i) base = base * rising_product(job.classes[i], 1, d[i]);
    GradedSeries out(job.ctx);
    for (const auto& choice : exact_choices(extended, d)) out += base * x_weight(job.ctx, choice);
    return out;
  });
}

GradedSeries i_relative_smooth(const TargetSpace& target, const DivisorArrangement& divisor,
                               int cap) {
  if (divisor.size() != 1) throw ContractError("the relative I-function needs exactly one divisor");
  ContextPtr ctx = target.make_context(1, cap);
  GradedSeries cls = divisor_series(ctx, divisor[0].cls);
  GradedSeries out(ctx);
  for (const auto& beta : enumerate_curve_classes(target, cap)) {
    int d = pairing(divisor[0].cls, beta);
    GradedSeries slice = base_j_function(ctx, target, beta) * rising_product(cls, 1, d - 1);
    out += transform(slice, [&](const ExponentKey& key) -> std::optional<std::pair<ExponentKey, Rational>> {
      ExponentKey k = key;
      k.sector[0] = -d;
      return std::make_pair(std::move(k), Rational(1));
    });
  }
  return out;
}

GradedSeries i_relative_extended_h0(const TargetSpace& target, const DivisorArrangement& divisor,
                                    int m, int cap) {
  if (divisor.size() != 1) throw ContractError("the relative I-function needs exactly one divisor");
  return i_infinity_extended_h0(target, divisor, m, cap);
}

GradedSeries i_local(const TargetSpace& target, const DivisorArrangement& divisors, int cap) {
  Job job(target, divisors, cap, SectorKind::integer);
  return job.assemble([&](const CurveClass&, const std::vector<int>& d, const GradedSeries& j) {
    GradedSeries slice = j;
    for (std::size_t i = 0; i < d.size(); ++i) {
      GradedSeries base = GradedSeries::lambda(job.ctx, i) - job.classes[i];
      for (int a = 0; a < d[i]; ++a) slice = slice * (base + GradedSeries::z_power(job.ctx, 1, -a));
    }
    return slice;
  });
}

}  // namespace rootstack
