#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rootstack/ifunctions.hpp"
#include "rootstack/series.hpp"
#include "rootstack/targets.hpp"

namespace rootstack {

// I split by z-degree. The mirror map is trivial when the z^1 part is z*1,
// nothing has z-degree >= 2, and the z^0 part is a sum of bare x_ij on their
// own sectors (sector j in slot i), each with coefficient 1.
struct MirrorMapReport {
  GradedSeries z_linear;
  GradedSeries z_zero;
  GradedSeries positive_tail;
  bool trivial = false;
  std::vector<std::string> reasons;
};

MirrorMapReport mirror_map(const GradedSeries& i_function);

struct InvariantKey {
  CurveClass beta;
  XMonomial xexp;
  std::vector<int> insertion;  // basis monomial of the interior insertion
  int psi = 0;
  std::vector<int> sector;

  auto operator<=>(const InvariantKey&) const = default;
};

// Genus-zero invariants <prod_ij [1]_{j e_i}^{k_ij}, [gamma psi^a]_sector>,
// multiplicities from x^k already multiplied back in.
struct InvariantTable {
  ContextPtr ctx;
  std::map<InvariantKey, Rational> entries;
  // Terms that were not read as invariants and why.
  std::vector<std::string> flags;

  Rational at(const InvariantKey& key) const;
};

// Reads invariants off an I-function with trivial mirror map: the z^{-a-1}
// coefficient c on sector s gives, for insertion gamma, the value
// int_X gamma * prod_{s_i != 0} D_i * c, times prod k_ij!. Throws
// MirrorMapError when the mirror map is nontrivial. divisors may be empty
// when the series carries only the untwisted sector.
InvariantTable extract_invariants(const GradedSeries& i_function,
                                  const std::vector<DivisorClass>& divisors = {});

// Untwisted-sector part of I rebuilt from the table (z^{<0} terms only).
GradedSeries reassemble(const InvariantTable& table);

// N^orb_beta(q_{d_1..d_n}): d_i contact-order-one markings on each D_i and
// one interior [pt] psi^{d-2}. Requires sum D_i = -K_X, d >= 2 and the
// positivity assumption up to (-K).beta; throws PreconditionError otherwise.
Rational n_orb(const TargetSpace& target, const DivisorArrangement& divisors,
               const CurveClass& beta);

struct StabilizationEntry {
  std::vector<int> roots;
  CurveClass beta;
  bool pass = false;
  // The finite-r beta-coefficient after rescaling and re-keying.
  GradedSeries rescaled;
  GradedSeries limit;
  std::optional<ExponentKey> mismatch;
};

struct StabilizationReport {
  bool pass = true;
  std::vector<StabilizationEntry> entries;
};

// For every beta and root vector: the beta-coefficient of the finite-r
// I-function divided by prod_{d_i>0} r_i, with residue sectors re-keyed to
// (-d_1..-d_n), against the beta-coefficient of the large-r limit. Requires
// r_i > d_i whenever d_i > 0 (PreconditionError).
StabilizationReport stabilization_check(const TargetSpace& target,
                                        const DivisorArrangement& divisors,
                                        const std::vector<CurveClass>& betas,
                                        const std::vector<RootData>& roots);

// All beta with (-K).beta <= cap and d_i < r_i for every root vector.
StabilizationReport stabilization_check(const TargetSpace& target,
                                        const DivisorArrangement& divisors, int cap,
                                        const std::vector<RootData>& roots);

// Same comparison for the extended I-functions (all x-monomials within the
// extended data), dividing by prod_{s_i<0} r_i. Every |s_i| must be below r_i.
StabilizationReport extended_stabilization_check(const TargetSpace& target,
                                                 const DivisorArrangement& divisors,
                                                 const ExtendedData& extended, int cap,
                                                 const std::vector<RootData>& roots);

}  // namespace rootstack
