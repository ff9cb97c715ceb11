#include "rootstack/periods.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "rootstack/errors.hpp"
#include "rootstack/ifunctions.hpp"
#include "rootstack/invariants.hpp"

namespace rootstack {

std::string to_string(PeriodKind kind) {
  switch (kind) {
    case PeriodKind::quantum:
      return "quantum";
    case PeriodKind::regularized:
      return "regularized";
    case PeriodKind::classical:
      return "classical";
    case PeriodKind::laurent:
      return "laurent";
  }
  return "unknown";
}

std::string to_string(const PeriodSequence& p) {
  std::ostringstream os;
  for (std::size_t m = 0; m < p.coeffs.size(); ++m) os << m << ": " << to_string(p.coeffs[m]) << '\n';
  return os.str();
}

PeriodSequence quantum_period(const TargetSpace& target, int m_cap) {
  PeriodSequence p{PeriodKind::quantum, std::vector<Rational>(static_cast<std::size_t>(std::max(m_cap, 0)) + 1)};
  p.coeffs[0] = 1;
  ContextPtr ctx = target.make_context(0, m_cap);
  for (const auto& beta : enumerate_curve_classes(target, m_cap)) {
    int m = target.anticanonical_degree(beta);
    if (m < 2) continue;
    ExponentKey key = ExponentKey::unit(*ctx);
    key.beta = beta;
    key.zpow = 1 - m;
    p.coeffs[static_cast<std::size_t>(m)] += base_j_function(ctx, target, beta).at(key);
  }
  return p;
}

PeriodSequence regularize(const PeriodSequence& p) {
  if (p.kind != PeriodKind::quantum) {
    throw ContractError("only a quantum period can be regularized, got " + to_string(p.kind));
  }
  PeriodSequence out{PeriodKind::regularized, p.coeffs};
  for (std::size_t m = 0; m < out.coeffs.size(); ++m) out.coeffs[m] *= factorial(m);
  return out;
}

namespace {

void tuples_rec(std::size_t n, int remaining, std::vector<int>& current,
                std::vector<std::vector<int>>& out) {
  if (current.size() + 1 == n) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current.push_back(v);
    tuples_rec(n, remaining - v, current, out);
    current.pop_back();
  }
}

// Every (d_1..d_n) >= 0 with sum d, lexicographically descending.
std::vector<std::vector<int>> contact_tuples(std::size_t n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  tuples_rec(n, d, current, out);
  return out;
}

}  // namespace

ClassicalPeriodReport classical_period_orbifold(const TargetSpace& target,
                                                const DivisorArrangement& divisors, int d_cap) {
  if (!is_anticanonical(target, divisors)) {
    throw PreconditionError("the superpotential needs the divisors to sum to -K_X");
  }
  AssumptionReport assumption = check_assumption(target, divisors, d_cap);
  if (!assumption.holds) {
    throw PreconditionError(
        "positivity assumption fails (some beta with D.beta >= 2 meets fewer than two D_i), so "
        "the mirror map is not known to be trivial");
  }
  ClassicalPeriodReport report;
  report.period.kind = PeriodKind::classical;
  report.period.coeffs.assign(static_cast<std::size_t>(std::max(d_cap, 0)) + 1, Rational(0));
  report.period.coeffs[0] = 1;

  ExtendedData ones;
  ones.contacts.assign(divisors.size(), {1});
  InvariantTable table =
      extract_invariants(i_infinity_extended_h0(target, divisors, ones, d_cap));

  std::map<std::vector<int>, std::vector<CurveClass>> by_contacts;
  for (const auto& beta : enumerate_curve_classes(target, d_cap)) {
    by_contacts[divisors.pairings(beta)].push_back(beta);
  }
  std::vector<int> point = target.ring().top_monomial();
  for (int d = 2; d <= d_cap; ++d) {
    for (const auto& tuple : contact_tuples(divisors.size(), d)) {
      auto it = by_contacts.find(tuple);
      if (it == by_contacts.end()) {
        report.skipped.push_back(tuple);
        continue;
      }
      Rational multinomial = factorial(static_cast<unsigned long>(d));
      XMonomial x;
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        multinomial /= factorial(static_cast<unsigned long>(tuple[i]));
        if (tuple[i] > 0) x.emplace_back(XVar{static_cast<int>(i), 1}, tuple[i]);
      }
      for (const auto& beta : it->second) {
        Rational n = table.at({beta, x, point, d - 2, std::vector<int>(divisors.size(), 0)});
        report.contributions.push_back({d, beta, tuple, multinomial, n});
        report.period.coeffs[static_cast<std::size_t>(d)] += multinomial * n;
      }
    }
  }
  return report;
}

PeriodComparison compare_periods(const TargetSpace& target, const DivisorArrangement& divisors,
                                 int cap) {
  PeriodComparison cmp;
  cmp.regularized = regularize(quantum_period(target, cap));
  cmp.classical = classical_period_orbifold(target, divisors, cap).period;
  for (std::size_t m = 0; m < cmp.regularized.coeffs.size(); ++m) {
    if (cmp.regularized.coeffs[m] != cmp.classical.coeffs[m]) {
      cmp.first_mismatch = static_cast<int>(m);
      break;
    }
  }
  cmp.pass = !cmp.first_mismatch;
  return cmp;
}

LaurentPolynomial::LaurentPolynomial(std::vector<std::string> variables)
    : variables_(std::move(variables)) {}

void LaurentPolynomial::add_term(std::vector<int> exponents, const Rational& c) {
  if (exponents.size() != variables_.size()) {
    throw ContractError("Laurent exponent vector has the wrong length");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(exponents), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational LaurentPolynomial::constant_term() const {
  auto it = terms_.find(std::vector<int>(variables_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& other) const {
  if (variables_ != other.variables_) throw ContractError("Laurent polynomials in different variables");
  LaurentPolynomial out(variables_);
  std::vector<int> e(variables_.size());
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

namespace {

struct RawFactor {
  std::string name;
  int exponent;
};

struct RawTerm {
  Rational coeff = 1;
  std::vector<RawFactor> factors;
};

class LaurentParser {
 public:
  explicit LaurentParser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      RawTerm t = term();
      t.coeff *= sign;
      terms.push_back(std::move(t));
      first = false;
      skip_space();
    }
    return terms;
  }

 private:
  RawTerm term() {
    RawTerm t;
    bool any = false;
    while (true) {
      skip_space();
      char c = at_end() ? '\0' : peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.coeff *= number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.factors.push_back(factor());
      } else {
        if (any) fail("expected a factor after '*'");
        break;
      }
      any = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("expected a coefficient or a variable");
    return t;
  }

  Rational number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '/') {
      ++pos_;
      std::size_t den = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (den == pos_) fail("expected a denominator");
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument&) {
      fail("bad rational coefficient");
    }
  }

  RawFactor factor() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    RawFactor f{std::string(text_.substr(start, pos_ - start)), 1};
    skip_space();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      int sign = 1;
      if (!at_end() && (peek() == '-' || peek() == '+')) {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      }
      std::size_t digits = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (digits == pos_) fail("expected an integer exponent");
      if (pos_ - digits > 6) fail("exponent too large");
      f.exponent = sign * std::stoi(std::string(text_.substr(digits, pos_ - digits)));
    }
    return f;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("Laurent polynomial, column " + std::to_string(pos_ + 1) + ": " +
                                what);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPolynomial LaurentPolynomial::parse(std::string_view text) {
  auto raw = LaurentParser(text).parse();
  std::vector<std::string> names;
  for (const auto& t : raw) {
    for (const auto& f : t.factors) {
      if (std::find(names.begin(), names.end(), f.name) == names.end()) names.push_back(f.name);
    }
  }
  LaurentPolynomial out(names);
  for (const auto& t : raw) {
    std::vector<int> e(names.size(), 0);
    for (const auto& f : t.factors) {
      auto idx = static_cast<std::size_t>(std::find(names.begin(), names.end(), f.name) - names.begin());
      e[idx] += f.exponent;
    }
    out.add_term(std::move(e), t.coeff);
  }
  return out;
}

PeriodSequence laurent_classical_period(const LaurentPolynomial& f, int d_cap) {
  PeriodSequence p{PeriodKind::laurent, {}};
  LaurentPolynomial power(f.variables());
  power.add_term(std::vector<int>(f.variables().size(), 0), 1);
  for (int d = 0; d <= d_cap; ++d) {
    p.coeffs.push_back(power.constant_term());
    if (d < d_cap) power = power * f;
  }
  return p;
}

}  // namespace rootstack
