#include "rootstack/ambient_ring.hpp"

#include <numeric>
#include <sstream>

#include "rootstack/errors.hpp"

namespace rootstack {

AmbientRing::AmbientRing(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.cap < 0) throw ContractError("generator '" + g.name + "' has a negative cap");
  }
}

bool AmbientRing::within_caps(std::span<const int> monomial) const {
  if (monomial.size() != generators_.size()) return false;
  for (std::size_t k = 0; k < monomial.size(); ++k) {
    if (monomial[k] < 0 || monomial[k] > generators_[k].cap) return false;
  }
  return true;
}

std::vector<int> AmbientRing::top_monomial() const {
  std::vector<int> top;
  top.reserve(generators_.size());
  for (const auto& g : generators_) top.push_back(g.cap);
  return top;
}

int AmbientRing::dimension() const {
  return std::accumulate(generators_.begin(), generators_.end(), 0,
                         [](int acc, const Generator& g) { return acc + g.cap; });
}

std::vector<int> AmbientRing::dual(std::span<const int> monomial) const {
  if (!within_caps(monomial)) throw ContractError("monomial outside the ring");
  std::vector<int> out(monomial.size());
  for (std::size_t k = 0; k < monomial.size(); ++k) out[k] = generators_[k].cap - monomial[k];
  return out;
}

std::vector<std::vector<int>> AmbientRing::monomials() const {
  std::vector<std::vector<int>> out;
  std::vector<int> current(size(), 0);
  while (true) {
    out.push_back(current);
    std::size_t k = size();
    while (k > 0) {
      --k;
      if (current[k] < generators_[k].cap) {
        ++current[k];
        for (std::size_t j = k + 1; j < size(); ++j) current[j] = 0;
        break;
      }
      if (k == 0) return out;
    }
    if (size() == 0) return out;
  }
}

std::string AmbientRing::monomial_to_string(std::span<const int> monomial) const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t k = 0; k < monomial.size() && k < size(); ++k) {
    if (monomial[k] == 0) continue;
    if (any) os << '*';
    os << generators_[k].name;
    if (monomial[k] != 1) os << '^' << monomial[k];
    any = true;
  }
  if (!any) return "1";
  return os.str();
}

}  // namespace rootstack
