// Acceptance gate: one PASS/FAIL line per criterion, all comparisons exact.

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../support/fixtures.hpp"
#include "rootstack/errors.hpp"
#include "rootstack/identities.hpp"
#include "rootstack/ifunctions.hpp"
#include "rootstack/invariants.hpp"
#include "rootstack/periods.hpp"

using namespace rootstack;
using namespace rootstack::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string str(const Rational& q) { return to_short_string(q); }

Outcome a1_line_conic_counts() {
  Outcome out;
  auto x = p2();
  auto d = line_conic();
  InvariantTable table = extract_invariants(i_infinity_extended_h0(x, d, 10, 15));
  const long expected[] = {2, 6, 20, 70, 252};
  out.detail << "values";
  for (int deg = 1; deg <= 5; ++deg) {
    InvariantKey key{{deg}, {{XVar{0, deg}, 1}, {XVar{1, 2 * deg}, 1}}, {2}, 0, {0, 0}};
    Rational v = table.at(key);
    out.detail << ' ' << str(v);
    out.require(v == expected[deg - 1], "d=" + std::to_string(deg));
  }
  out.detail << "; ";
  return out;
}

Outcome a2_quadric_counts() {
  Outcome out;
  auto x = p1p1();
  auto d = two_quadrics();
  InvariantTable table = extract_invariants(i_infinity_extended_h0(x, d, 4, 8));
  int checked = 0;
  for (int d1 = 0; d1 <= 4; ++d1) {
    for (int d2 = 0; d1 + d2 <= 4; ++d2) {
      if (d1 + d2 == 0) continue;
      int s = d1 + d2;
      Rational expected = factorial(s) * factorial(s) /
                          (factorial(d1) * factorial(d1) * factorial(d2) * factorial(d2));
      InvariantKey key{{d1, d2}, {{XVar{0, s}, 1}, {XVar{1, s}, 1}}, {1, 1}, 0, {0, 0}};
      Rational v = table.at(key);
      out.require(v == expected, "beta=(" + std::to_string(d1) + "," + std::to_string(d2) +
                                     ") got " + str(v) + " want " + str(expected));
      ++checked;
    }
  }
  out.detail << checked << " classes; (1,1) -> " << str(table.at({{1, 1}, {{XVar{0, 2}, 1}, {XVar{1, 2}, 1}}, {1, 1}, 0, {0, 0}}))
             << ", (2,1) -> " << str(table.at({{2, 1}, {{XVar{0, 3}, 1}, {XVar{1, 3}, 1}}, {1, 1}, 0, {0, 0}}))
             << "; ";
  return out;
}

Outcome a3_stabilization() {
  Outcome out;
  std::vector<RootData> roots{RootData({5, 7}), RootData({7, 11}), RootData({11, 13})};
  auto p2_report = stabilization_check(p2(), line_conic(), 9, roots);
  auto q_report = stabilization_check(p1p1(), two_quadrics(), 9, roots);
  out.require(p2_report.pass, "P2 line+conic");
  out.require(q_report.pass, "P1xP1");
  out.require(p2_report.entries.size() == 3 * 4, "P2 covers beta = 0..3");
  out.require(q_report.entries.size() == 3 * 15, "P1xP1 covers (-K).beta <= 9");
  out.detail << p2_report.entries.size() + q_report.entries.size()
             << " (beta, r) pairs for r in {(5,7),(7,11),(11,13)}; ";
  return out;
}

Outcome a4_identities() {
  Outcome out;
  int reports = 0;
  auto expect = [&](const IdentityReport& r, const std::string& what) {
    ++reports;
    out.require(r.pass, what + (r.first_mismatch ? " mismatch at " +
                                                       key_to_string(*r.first_mismatch, r.left.context())
                                                 : std::string()));
  };
  // (a) smooth divisors
  for (const auto& [name, div] : {std::pair{"conic", conic()}, std::pair{"cubic", cubic()}}) {
    for (int deg = 1; deg <= 3; ++deg) {
      auto r = check_local_relative_smooth(p2(), div, {deg});
      int dd = pairing(div[0].cls, {deg});
      expect(r, std::string("relative ") + name + " d=" + std::to_string(deg));
      out.require(r.sign == ((dd - 1) % 2 == 0 ? 1 : -1), "sign (-1)^{d-1}");
    }
  }
  // (b) non-extended normal crossings
  for (int deg = 1; deg <= 3; ++deg) {
    expect(check_local_orbifold_nonextended(p2(), line_conic(), {deg}), "orbifold P2 d=" + std::to_string(deg));
  }
  for (const auto& beta : enumerate_curve_classes(p1p1(), 8)) {
    if (beta[0] + beta[1] == 0) continue;
    expect(check_local_orbifold_nonextended(p1p1(), two_quadrics(), beta), "orbifold P1xP1");
  }
  // (c) extended, with the numeric examples
  const Rational local_expected[] = {make_rational(-1, 1), make_rational(3, 4), make_rational(-10, 9)};
  const Rational orbifold_expected[] = {2, 6, 20};
  out.detail << "P2 (local, orbifold, factor):";
  for (int deg = 1; deg <= 3; ++deg) {
    auto r = check_local_orbifold_extended(p2(), line_conic(), {deg});
    expect(r, "extended P2 d=" + std::to_string(deg));
    out.require(r.local_point && *r.local_point == local_expected[deg - 1], "local value");
    out.require(r.orbifold_value && *r.orbifold_value == orbifold_expected[deg - 1], "orbifold value");
    Rational factor = Rational(deg % 2 ? -2 : 2) * deg * deg;
    out.require(r.factor && *r.factor == factor, "factor (-1)^d 2d^2");
    out.detail << " (" << str(*r.local_point) << ", " << str(*r.orbifold_value) << ", "
               << str(*r.factor) << ")";
  }
  for (const auto& beta : enumerate_curve_classes(p1p1(), 8)) {
    int s = beta[0] + beta[1];
    if (s == 0) continue;
    auto r = check_local_orbifold_extended(p1p1(), two_quadrics(), beta);
    expect(r, "extended P1xP1");
    out.require(r.factor && *r.factor == s * s, "factor (d1+d2)^2");
    if (beta == CurveClass{1, 1}) {
      out.require(*r.local_point == 1 && *r.orbifold_value == 4, "(1,1) local 1, orbifold 4");
    }
  }
  out.detail << "; " << reports << " series identities; ";
  return out;
}

Outcome a5_periods() {
  Outcome out;
  auto p2_cmp = compare_periods(p2(), line_conic(), 9);
  auto q_cmp = compare_periods(p1p1(), two_quadrics(), 8);
  out.require(p2_cmp.pass, "P2 regularized vs classical");
  out.require(q_cmp.pass, "P1xP1 regularized vs classical");
  auto laurent = laurent_classical_period(LaurentPolynomial::parse("x + y + x^-1*y^-1"), 9);
  const long expected[] = {1, 0, 0, 6, 0, 0, 90, 0, 0, 1680};
  out.detail << "P2:";
  for (int m = 0; m <= 9; ++m) {
    out.require(laurent.coeffs[m] == expected[m], "Laurent m=" + std::to_string(m));
    out.require(p2_cmp.regularized.coeffs[m] == expected[m], "regularized m=" + std::to_string(m));
    out.require(p2_cmp.classical.coeffs[m] == expected[m], "classical m=" + std::to_string(m));
    out.detail << ' ' << str(p2_cmp.classical.coeffs[m]);
  }
  out.detail << "; P1xP1:";
  for (const auto& c : q_cmp.classical.coeffs) out.detail << ' ' << str(c);
  out.detail << "; ";
  return out;
}

Outcome a6_properties() {
  Outcome out;
  auto x = p2();
  ContextPtr ctx = x.make_context(2, 6);
  SeriesGenerator gen(ctx, 20240611u);
  int ring_ok = 0;
  for (int t = 0; t < 1000; ++t) {
    auto a = gen.series();
    auto b = gen.series();
    auto c = gen.series();
    bool ok = (a + b) + c == a + (b + c) && a * b == b * a && a * (b + c) == a * b + a * c;
    ring_ok += ok;
  }
  out.require(ring_ok == 1000, "ring axioms");

  int inv_ok = 0;
  for (int t = 0; t < 200; ++t) {
    GradedSeries cls = gen.linear_class();
    Rational c = gen.coefficient();
    inv_ok += invert_z_linear(c, cls) * linear_factor(cls, c) == GradedSeries::constant(ctx, 1);
  }
  out.require(inv_ok == 200, "invert * self = 1");

  int div_ok = 0;
  for (int t = 0; t < 200; ++t) {
    GradedSeries cls = gen.linear_class();
    GradedSeries q = gen.series();
    std::size_t li = static_cast<std::size_t>(gen.uniform(0, 1));
    GradedSeries f = cls + GradedSeries::lambda(ctx, li);
    GradedSeries num = q * f;
    GradedSeries back = exact_divide_linear(num, cls, li) * f;
    div_ok += back == num;
  }
  out.require(div_ok == 200, "exact division round trip");

  // Sector vanishing on the two transversal lines of P^1 x P^1 that do not
  // meet: D1 = P1, D2 = P1 (disjoint fibres).
  auto fibres = DivisorArrangement(p1p1(), {{"F1", {1, 0}}, {"F2", {1, 0}}});
  auto fib = i_infinity_nonextended(p1p1(), fibres, 8);
  bool vanishing = true;
  for (const auto& [key, c] : fib.terms()) vanishing = vanishing && !(key.sector[0] && key.sector[1]);
  out.require(vanishing && !fib.is_zero(), "sector vanishing");

  // Mirror-map lemma instance: the extended large-r I-function has the form
  // z + sum x_ij [1]_{j e_i} + O(z^{-1}).
  auto lemma = [&](const TargetSpace& t, const DivisorArrangement& d, int m, int cap) {
    auto s = i_infinity_extended(t, d, ExtendedData::uniform(d.size(), m, 2), cap);
    MirrorMapReport mm = mirror_map(s);
    GradedSeries expected(s.context_ptr());
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (int j = 1; j <= m; ++j) {
        std::vector<int> sector(d.size(), 0);
        sector[i] = j;
        expected.add_term(key_of(*s.context_ptr(), {}, 0, {}, sector, {{XVar{static_cast<int>(i), j}, 1}}), 1);
      }
    }
    return mm.trivial && mm.z_zero == expected;
  };
  out.require(lemma(p2(), line_conic(), 3, 9), "mirror-map lemma on P2 line+conic");
  out.require(lemma(p1p1(), two_quadrics(), 3, 8), "mirror-map lemma on P1xP1");

  bool rejected = false;
  try {
    extract_invariants(i_infinity_nonextended(p2(), cubic(), 6));
  } catch (const MirrorMapError&) {
    rejected = true;
  }
  out.require(rejected, "cubic rejected with MirrorMapError");
  out.detail << "1000 ring-axiom triples, 200 inversions, 200 divisions; ";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1 P2 line+conic counts (2d)!/(d!)^2, d=1..5", a1_line_conic_counts},
      {"A2 P1xP1 two (1,1) curves, d1+d2<=4", a2_quadric_counts},
      {"A3 large-r stabilization, (-K).beta<=9", a3_stabilization},
      {"A4 local-log-orbifold identities", a4_identities},
      {"A5 regularized quantum period = classical period", a5_periods},
      {"A6 property suites", a6_properties},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    bool pass = false;
    std::string detail;
    try {
      Outcome o = run();
      pass = o.pass;
      detail = o.detail.str();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    failures += !pass;
    std::cout << (pass ? "PASS " : "FAIL ") << name << " | " << detail << '\n';
  }
  return failures == 0 ? 0 : 1;
}
