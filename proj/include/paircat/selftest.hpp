#pragma once

#include <functional>
#include <string>
#include <vector>

namespace paircat::selftest {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string name;
  std::string description;
  std::function<Outcome(bool quick)> run;
};

/// The invariant suite behind `paircat selftest`.
const std::vector<Check>& checks();

struct RankAgreement {
  std::size_t compared = 0;
  /// Pairs one measure cannot separate in double precision.
  std::size_t unresolved = 0;
  std::size_t violations = 0;
};

/// Pairwise ordering comparison of two measures over the same samples. Pairs
/// whose smaller eigenvalues differ by less than `eigen_tie` are ties. Near
/// maximal mixing both entropies are flat, so eigenvalue gaps well above
/// `eigen_tie` can still move a measure by under one ulp; such pairs are
/// counted as unresolved rather than compared.
RankAgreement rank_agreement(const std::vector<double>& eigenvalue, const std::vector<double>& first,
                             const std::vector<double>& second, double eigen_tie = 1e-12,
                             double resolution = 1e-14);

}  // namespace paircat::selftest
