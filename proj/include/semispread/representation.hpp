#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semispread/semilattice.hpp"

namespace semispread {

/// Sorted, duplicate-free set of naturals.
using IndexSet = std::vector<std::uint32_t>;

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);

/// T: element -> nonempty subset of [0, universe_bound). `sets` is indexed
/// by element index of the JoinTable it was built from.
struct RepMap {
  std::size_t universe_bound = 0;
  std::vector<IndexSet> sets;
};

/// snapshots[beta - 1][k] = T_beta(e_k) for k < beta (positions in the
/// enumeration, not element indices).
struct RepTrace {
  std::vector<std::vector<IndexSet>> snapshots;

  std::size_t steps() const { return snapshots.size(); }
  const IndexSet& at(std::size_t beta, std::size_t position) const { return snapshots.at(beta - 1).at(position); }
};

std::pair<RepMap, RepTrace> build_representation(const Enumeration& enumeration, const JoinTable& table);

struct RepFailure {
  std::string check;  ///< "injective", "join", "order"
  std::size_t a = 0;
  std::size_t b = 0;
};

struct RepReport {
  bool injective = true;
  bool join_preserving = true;
  bool order_embedding = true;
  std::size_t pairs_checked = 0;
  std::vector<RepFailure> failures;

  bool ok() const { return injective && join_preserving && order_embedding; }
};

RepReport verify_representation(const RepMap& rep, const JoinTable& table);

struct IdentityViolation {
  std::size_t beta1 = 0;
  std::size_t beta2 = 0;
};

struct IdentityReport {
  std::size_t checked = 0;
  /// Counterexamples with beta1 >= 1.
  std::vector<IdentityViolation> violations;
  /// Deviations of the beta1 = 0 analogue; informational only.
  std::vector<IdentityViolation> flagged_base;

  bool ok() const { return violations.empty(); }
};

/// T_{b2}(e_{b1}) == T_{b1+1}(e_{b1}) u [2 b1 + 2, 2 b2) for all b1 < b2 <= steps.
IdentityReport check_interval_identity(const RepTrace& trace);

}  // namespace semispread
