#pragma once

#include <span>
#include <string>
#include <vector>

namespace rootstack {

// A generator g_k of degree 2 with g_k^{cap+1} = 0 (the hyperplane class of
// a P^{cap} factor).
struct Generator {
  std::string name;
  int cap = 0;

  bool operator==(const Generator&) const = default;
};

// Monomial-truncation ring Q[g_1..g_m]/(g_k^{n_k+1}): the cohomology of a
// product of projective spaces. Integration reads off the coefficient of the
// top monomial prod g_k^{n_k}.
class AmbientRing {
 public:
  AmbientRing() = default;
  explicit AmbientRing(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const Generator& generator(std::size_t k) const { return generators_.at(k); }
  std::span<const Generator> generators() const { return generators_; }

  bool within_caps(std::span<const int> monomial) const;
  std::vector<int> unit_monomial() const { return std::vector<int>(size(), 0); }
  std::vector<int> top_monomial() const;
  int dimension() const;

  // Poincare dual of a monomial: the complementary monomial.
  std::vector<int> dual(std::span<const int> monomial) const;

  // Every monomial within caps, lexicographic order.
  std::vector<std::vector<int>> monomials() const;

  std::string monomial_to_string(std::span<const int> monomial) const;

  bool operator==(const AmbientRing&) const = default;

 private:
  std::vector<Generator> generators_;
};

}  // namespace rootstack
