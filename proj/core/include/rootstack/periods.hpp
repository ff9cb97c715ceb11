#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rootstack/rational.hpp"
#include "rootstack/targets.hpp"

namespace rootstack {

enum class PeriodKind { quantum, regularized, classical, laurent };

std::string to_string(PeriodKind kind);

struct PeriodSequence {
  PeriodKind kind = PeriodKind::quantum;
  std::vector<Rational> coeffs;

  bool operator==(const PeriodSequence&) const = default;
};

// "m: num/den" per line.
std::string to_string(const PeriodSequence& p);

// p_0 = 1, p_1 = 0 and p_m = sum over (-K).beta = m of the H^0 z^{1-m}
// coefficient of J_beta, for m <= m_cap.
PeriodSequence quantum_period(const TargetSpace& target, int m_cap);

// m! p_m. Throws ContractError unless p is a quantum period.
PeriodSequence regularize(const PeriodSequence& p);

struct PeriodContribution {
  int degree = 0;
  CurveClass beta;
  std::vector<int> contacts;
  Rational multinomial;
  Rational invariant;
};

struct ClassicalPeriodReport {
  PeriodSequence period;
  std::vector<PeriodContribution> contributions;
  // Contact tuples with sum d matching no effective class; they contribute 0.
  std::vector<std::vector<int>> skipped;
};

// c_{W,d,0} = sum over beta of d!/prod d_i! N^orb_beta(q_{d_1..d_n}) with
// d_i = D_i.beta and Q^beta -> t^{(-K).beta}. Needs sum D_i = -K_X and the
// positivity assumption up to d_cap (PreconditionError otherwise).
ClassicalPeriodReport classical_period_orbifold(const TargetSpace& target,
                                                const DivisorArrangement& divisors, int d_cap);

struct PeriodComparison {
  PeriodSequence regularized;
  PeriodSequence classical;
  bool pass = false;
  std::optional<int> first_mismatch;
};

PeriodComparison compare_periods(const TargetSpace& target, const DivisorArrangement& divisors,
                                 int cap);

// Finitely supported sum of c * x_1^{e_1} ... x_k^{e_k}, e in Z^k.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  explicit LaurentPolynomial(std::vector<std::string> variables);

  // Terms such as "x + y + x^-1*y^-1" or "3/2*x^2*y - 1"; variables are
  // identifiers, collected in order of first appearance.
  static LaurentPolynomial parse(std::string_view text);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

  void add_term(std::vector<int> exponents, const Rational& c);
  Rational constant_term() const;

  LaurentPolynomial operator*(const LaurentPolynomial& other) const;

 private:
  std::vector<std::string> variables_;
  std::map<std::vector<int>, Rational> terms_;
};

// Constant terms of f^0, f^1, ..., f^{d_cap}.
PeriodSequence laurent_classical_period(const LaurentPolynomial& f, int d_cap);

}  // namespace rootstack
