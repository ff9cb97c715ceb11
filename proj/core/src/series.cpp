#include "rootstack/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rootstack/errors.hpp"

namespace rootstack {

XMonomial x_multiply(const XMonomial& a, const XMonomial& b) {
  XMonomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      out.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

int x_degree(const XMonomial& m) {
  int d = 0;
  for (const auto& [var, k] : m) d += k;
  return d;
}

Rational x_factorial_weight(const XMonomial& m) {
  Rational w = 1;
  for (const auto& [var, k] : m) w *= factorial(static_cast<unsigned long>(k));
  return w;
}

std::string x_to_string(const XMonomial& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (t) os << '*';
    os << 'x' << (m[t].first.divisor + 1) << '_' << m[t].first.contact;
    if (m[t].second != 1) os << '^' << m[t].second;
  }
  return os.str();
}

int SeriesContext::beta_weight(std::span<const int> beta) const {
  int w = 0;
  for (std::size_t k = 0; k < beta.size() && k < beta_weights.size(); ++k) {
    w += beta_weights[k] * beta[k];
  }
  return w;
}

ExponentKey ExponentKey::unit(const SeriesContext& ctx) {
  ExponentKey key;
  key.beta.assign(ctx.beta_weights.size(), 0);
  key.sector.assign(ctx.n_sectors, 0);
  key.coh.assign(ctx.ring.size(), 0);
  key.lambda.assign(ctx.n_lambda, 0);
  return key;
}

bool KeyOrder::operator()(const ExponentKey& a, const ExponentKey& b) const {
  if (a.beta != b.beta) return a.beta < b.beta;
  if (a.zpow != b.zpow) return a.zpow > b.zpow;
  if (a.xexp != b.xexp) return a.xexp < b.xexp;
  if (a.sector != b.sector) return a.sector < b.sector;
  if (a.coh != b.coh) return a.coh < b.coh;
  return a.lambda < b.lambda;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

bool all_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int e) { return e == 0; });
}

}  // namespace

std::string key_to_string(const ExponentKey& key, const SeriesContext& ctx) {
  std::ostringstream os;
  os << "Q^(" << join(key.beta) << ") z^" << key.zpow;
  if (!key.xexp.empty()) os << ' ' << x_to_string(key.xexp);
  os << ' ' << ctx.ring.monomial_to_string(key.coh);
  if (!all_zero(key.lambda)) {
    for (std::size_t i = 0; i < key.lambda.size(); ++i) {
      if (key.lambda[i]) os << " l" << (i + 1) << '^' << key.lambda[i];
    }
  }
  if (!key.sector.empty()) os << " [" << join(key.sector) << ']';
  return os.str();
}

GradedSeries::GradedSeries(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw ContractError("series needs a context");
}

GradedSeries GradedSeries::constant(ContextPtr ctx, const Rational& c) {
  GradedSeries s(ctx);
  s.add_term(ExponentKey::unit(*ctx), c);
  return s;
}

GradedSeries GradedSeries::monomial(ContextPtr ctx, ExponentKey key, const Rational& c) {
  GradedSeries s(std::move(ctx));
  s.add_term(std::move(key), c);
  return s;
}

GradedSeries GradedSeries::z_power(ContextPtr ctx, int power, const Rational& c) {
  ExponentKey key = ExponentKey::unit(*ctx);
  key.zpow = power;
  return monomial(std::move(ctx), std::move(key), c);
}

GradedSeries GradedSeries::generator(ContextPtr ctx, std::size_t k, const Rational& c) {
  ExponentKey key = ExponentKey::unit(*ctx);
  if (k >= key.coh.size()) throw ContractError("generator index out of range");
  key.coh[k] = 1;
  return monomial(std::move(ctx), std::move(key), c);
}

GradedSeries GradedSeries::lambda(ContextPtr ctx, std::size_t i) {
  ExponentKey key = ExponentKey::unit(*ctx);
  if (i >= key.lambda.size()) throw ContractError("equivariant parameter index out of range");
  key.lambda[i] = 1;
  return monomial(std::move(ctx), std::move(key));
}

GradedSeries GradedSeries::novikov(ContextPtr ctx, std::vector<int> beta) {
  ExponentKey key = ExponentKey::unit(*ctx);
  key.beta = std::move(beta);
  return monomial(std::move(ctx), std::move(key));
}

GradedSeries GradedSeries::x_monomial(ContextPtr ctx, XMonomial m) {
  ExponentKey key = ExponentKey::unit(*ctx);
  key.xexp = std::move(m);
  return monomial(std::move(ctx), std::move(key));
}

GradedSeries GradedSeries::sector_unit(ContextPtr ctx, std::vector<int> sector) {
  ExponentKey key = ExponentKey::unit(*ctx);
  key.sector = std::move(sector);
  return monomial(std::move(ctx), std::move(key));
}

Rational GradedSeries::at(const ExponentKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedSeries::check_shape(const ExponentKey& key) const {
  const SeriesContext& c = *ctx_;
  if (key.beta.size() != c.beta_weights.size() || key.sector.size() != c.n_sectors ||
      key.coh.size() != c.ring.size() || key.lambda.size() != c.n_lambda) {
    throw ContractError("exponent key shape does not match the series context");
  }
  for (int b : key.beta) {
    if (b < 0) throw ContractError("negative curve-class exponent");
  }
  for (int l : key.lambda) {
    if (l < 0) throw ContractError("negative equivariant exponent");
  }
  for (const auto& [var, k] : key.xexp) {
    if (k <= 0 || var.contact < 1 || var.divisor < 0) {
      throw ContractError("malformed extended-variable exponent");
    }
  }
}

bool GradedSeries::within_truncation(const ExponentKey& key) const {
  const SeriesContext& c = *ctx_;
  if (!c.ring.within_caps(key.coh)) return false;
  if (c.beta_weight(key.beta) > c.beta_cap) return false;
  if (c.z_floor && key.zpow < *c.z_floor) return false;
  return true;
}

void GradedSeries::add_term(ExponentKey key, const Rational& c) {
  if (c == 0) return;
  check_shape(key);
  for (int e : key.coh) {
    if (e < 0) throw ContractError("negative cohomology exponent");
  }
  if (!within_truncation(key)) return;
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

void require_same_context(const GradedSeries& a, const GradedSeries& b) {
  if (a.context_ptr() == b.context_ptr()) return;
  if (!(a.context() == b.context())) {
    throw ContractError("series have different rings or truncation contexts");
  }
}

}  // namespace

GradedSeries& GradedSeries::operator+=(const GradedSeries& other) {
  require_same_context(*this, other);
  for (const auto& [key, c] : other.terms_) add_term(key, c);
  return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& other) {
  require_same_context(*this, other);
  for (const auto& [key, c] : other.terms_) add_term(key, -c);
  return *this;
}

GradedSeries& GradedSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

bool GradedSeries::operator==(const GradedSeries& other) const {
  return ctx_->operator==(*other.ctx_) && terms_ == other.terms_;
}

GradedSeries series_add(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries out = a;
  out += b;
  return out;
}

namespace {

// Combined key, or nullopt when two nonzero sectors meet.
bool combine_sector(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
  bool a_zero = all_zero(a);
  bool b_zero = all_zero(b);
  if (!a_zero && !b_zero) return false;
  out = a_zero ? b : a;
  return true;
}

}  // namespace

GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b) {
  require_same_context(a, b);
  const SeriesContext& ctx = a.context();
  GradedSeries out(a.context_ptr());
  ExponentKey key;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      key.coh.resize(ka.coh.size());
      bool zero = false;
      for (std::size_t k = 0; k < ka.coh.size(); ++k) {
        key.coh[k] = ka.coh[k] + kb.coh[k];
        if (key.coh[k] > ctx.ring.generator(k).cap) {
          zero = true;
          break;
        }
      }
      if (zero) continue;
      key.beta.resize(ka.beta.size());
      for (std::size_t k = 0; k < ka.beta.size(); ++k) key.beta[k] = ka.beta[k] + kb.beta[k];
      if (ctx.beta_weight(key.beta) > ctx.beta_cap) continue;
      key.zpow = ka.zpow + kb.zpow;
      if (ctx.z_floor && key.zpow < *ctx.z_floor) continue;
      if (!combine_sector(ka.sector, kb.sector, key.sector)) {
        throw ContractError("product of two twisted-sector series is not defined");
      }
      key.lambda.resize(ka.lambda.size());
      for (std::size_t k = 0; k < ka.lambda.size(); ++k) key.lambda[k] = ka.lambda[k] + kb.lambda[k];
      key.xexp = ka.xexp.empty() ? kb.xexp : (kb.xexp.empty() ? ka.xexp : x_multiply(ka.xexp, kb.xexp));
      out.add_term(key, ca * cb);
    }
  }
  return out;
}

GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) { return series_add(a, b); }

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries out = a;
  out -= b;
  return out;
}

GradedSeries operator-(const GradedSeries& a) {
  GradedSeries out = a;
  out *= Rational(-1);
  return out;
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) { return series_mul(a, b); }

GradedSeries operator*(const Rational& c, const GradedSeries& a) {
  GradedSeries out = a;
  out *= c;
  return out;
}

GradedSeries power(const GradedSeries& s, int exponent) {
  if (exponent < 0) throw ContractError("negative power of a series");
  GradedSeries result = GradedSeries::constant(s.context_ptr(), 1);
  GradedSeries base = s;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

namespace {

void require_degree_two_class(const GradedSeries& cls) {
  for (const auto& [key, c] : cls.terms()) {
    int deg = std::accumulate(key.coh.begin(), key.coh.end(), 0);
    if (deg != 1 || key.zpow != 0 || !key.xexp.empty() || !all_zero(key.beta) ||
        !all_zero(key.sector) || !all_zero(key.lambda)) {
      throw ContractError("expected a degree-2 cohomology class, got term " +
                          key_to_string(key, cls.context()));
    }
  }
}

}  // namespace

GradedSeries linear_factor(const GradedSeries& cls, const Rational& c) {
  require_degree_two_class(cls);
  return cls + GradedSeries::z_power(cls.context_ptr(), 1, c);
}

GradedSeries invert_z_linear(const Rational& c, const GradedSeries& cls) {
  if (c == 0) {
    throw ContractError("c*z + class with c = 0 is not invertible without inverting lambda");
  }
  require_degree_two_class(cls);
  const ContextPtr& ctx = cls.context_ptr();
  Rational inv_c = 1 / c;
  // ratio = -cls / (c z)
  GradedSeries ratio = series_mul(cls, GradedSeries::z_power(ctx, -1, -inv_c));
  GradedSeries lead = GradedSeries::z_power(ctx, -1, inv_c);
  GradedSeries result = lead;
  GradedSeries term = lead;
  while (true) {
    term = term * ratio;
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

GradedSeries exact_divide_linear(const GradedSeries& num, const GradedSeries& cls,
                                 std::size_t lambda_index) {
  require_same_context(num, cls);
  const ContextPtr& ctx = num.context_ptr();
  if (lambda_index >= ctx->n_lambda) throw ContractError("equivariant parameter index out of range");
  for (const auto& [key, c] : cls.terms()) {
    if (key.lambda[lambda_index] != 0) {
      throw ContractError("divisor factor must be linear in its equivariant parameter");
    }
  }
  if (num.is_zero()) return num;

  // Split num = sum_k a_k lambda^k with a_k free of lambda_i.
  int top = 0;
  for (const auto& [key, c] : num.terms()) top = std::max(top, key.lambda[lambda_index]);
  std::vector<GradedSeries> a(static_cast<std::size_t>(top) + 1, GradedSeries(ctx));
  for (const auto& [key, c] : num.terms()) {
    ExponentKey k = key;
    int e = k.lambda[lambda_index];
    k.lambda[lambda_index] = 0;
    a[static_cast<std::size_t>(e)].add_term(std::move(k), c);
  }

  // Synthetic division by (lambda + cls): b_{k-1} = a_k - cls * b_k.
  std::vector<GradedSeries> b(static_cast<std::size_t>(top), GradedSeries(ctx));
  GradedSeries carry(ctx);
  for (int k = top; k >= 1; --k) {
    GradedSeries bk = a[static_cast<std::size_t>(k)] - carry;
    carry = cls * bk;
    b[static_cast<std::size_t>(k - 1)] = std::move(bk);
  }
  GradedSeries remainder = a[0] - carry;
  if (!remainder.is_zero()) {
    throw DivisibilityError("not divisible by (" + to_string(cls) + " + l" +
                            std::to_string(lambda_index + 1) + "); remainder term " +
                            key_to_string(remainder.terms().begin()->first, *ctx));
  }

  GradedSeries quotient(ctx);
  for (std::size_t k = 0; k < b.size(); ++k) {
    for (const auto& [key, c] : b[k].terms()) {
      ExponentKey q = key;
      q.lambda[lambda_index] += static_cast<int>(k);
      quotient.add_term(std::move(q), c);
    }
  }
  return quotient;
}

GradedSeries coefficient(const GradedSeries& s, const Selector& sel) {
  GradedSeries out(s.context_ptr());
  for (const auto& [key, c] : s.terms()) {
    if (sel.beta && key.beta != *sel.beta) continue;
    if (sel.zpow && key.zpow != *sel.zpow) continue;
    if (sel.xexp && key.xexp != *sel.xexp) continue;
    if (sel.sector && key.sector != *sel.sector) continue;
    if (sel.coh && key.coh != *sel.coh) continue;
    if (sel.lambda && key.lambda != *sel.lambda) continue;
    ExponentKey k = key;
    if (sel.beta) std::fill(k.beta.begin(), k.beta.end(), 0);
    if (sel.zpow) k.zpow = 0;
    if (sel.xexp) k.xexp.clear();
    if (sel.sector) std::fill(k.sector.begin(), k.sector.end(), 0);
    if (sel.coh) std::fill(k.coh.begin(), k.coh.end(), 0);
    if (sel.lambda) std::fill(k.lambda.begin(), k.lambda.end(), 0);
    out.add_term(std::move(k), c);
  }
  return out;
}

GradedSeries set_lambda_zero(const GradedSeries& s) {
  return filter(s, [](const ExponentKey& key, const Rational&) { return all_zero(key.lambda); });
}

GradedSeries filter(const GradedSeries& s,
                    const std::function<bool(const ExponentKey&, const Rational&)>& pred) {
  GradedSeries out(s.context_ptr());
  for (const auto& [key, c] : s.terms()) {
    if (pred(key, c)) out.add_term(key, c);
  }
  return out;
}

GradedSeries transform(
    const GradedSeries& s,
    const std::function<std::optional<std::pair<ExponentKey, Rational>>(const ExponentKey&)>& f) {
  GradedSeries out(s.context_ptr());
  for (const auto& [key, c] : s.terms()) {
    auto mapped = f(key);
    if (!mapped) continue;
    out.add_term(std::move(mapped->first), c * mapped->second);
  }
  return out;
}

GradedSeries rebase(const GradedSeries& s, ContextPtr ctx) {
  GradedSeries out(std::move(ctx));
  for (const auto& [key, c] : s.terms()) out.add_term(key, c);
  return out;
}

std::optional<ExponentKey> first_difference(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries diff = a - b;
  if (diff.is_zero()) return std::nullopt;
  return diff.terms().begin()->first;
}

std::string to_string(const GradedSeries& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : s.terms()) {
    if (!first) os << " + ";
    os << '(' << to_short_string(c) << ") " << key_to_string(key, s.context());
    first = false;
  }
  return os.str();
}

}  // namespace rootstack
