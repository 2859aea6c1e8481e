#include "semispread/representation.hpp"

#include <algorithm>
#include <iterator>

namespace semispread {

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::pair<RepMap, RepTrace> build_representation(const Enumeration& enumeration, const JoinTable& table) {
  const std::size_t n = enumeration.beta0();
  if (n == 0 || n != table.size()) {
    throw LatticeError(LatticeError::Kind::InternalInvariantFailure, "enumeration and table disagree in size");
  }
  RepTrace trace;
  std::vector<IndexSet> current{{0, 1}};
  trace.snapshots.push_back(current);

  for (std::size_t beta = 1; beta < n; ++beta) {
    const std::size_t e = enumeration.order[beta];
    const auto even = static_cast<std::uint32_t>(2 * beta);
    const auto odd = static_cast<std::uint32_t>(2 * beta + 1);

    bool any_above = false;
    IndexSet meet;
    for (std::size_t k = 0; k < beta; ++k) {
      if (!table.less(e, enumeration.order[k])) continue;
      meet = any_above ? set_intersection(meet, current[k]) : current[k];
      any_above = true;
    }
    if (!any_above) {
      throw LatticeError(LatticeError::Kind::InternalInvariantFailure,
                         "EmptyIntersectionFamily: nothing above '" + table.id(e) + "' in U_" + std::to_string(beta),
                         table.id(e));
    }
    for (auto& set : current) {
      set.push_back(even);
      set.push_back(odd);
    }
    meet.push_back(odd);  // every member of meet is < 2 beta
    current.push_back(std::move(meet));
    trace.snapshots.push_back(current);
  }

  RepMap rep;
  rep.universe_bound = 2 * n;
  rep.sets.resize(n);
  for (std::size_t k = 0; k < n; ++k) rep.sets[enumeration.order[k]] = current[k];
  return {std::move(rep), std::move(trace)};
}

RepReport verify_representation(const RepMap& rep, const JoinTable& table) {
  RepReport report;
  const std::size_t n = table.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      ++report.pairs_checked;
      const IndexSet& ta = rep.sets[a];
      const IndexSet& tb = rep.sets[b];
      if (a < b && ta == tb) {
        report.injective = false;
        report.failures.push_back({"injective", a, b});
      }
      if (a <= b && rep.sets[table.join(a, b)] != set_union(ta, tb)) {
        report.join_preserving = false;
        report.failures.push_back({"join", a, b});
      }
      if (is_subset(ta, tb) != table.leq(a, b)) {
        report.order_embedding = false;
        report.failures.push_back({"order", a, b});
      }
    }
  }
  return report;
}

IdentityReport check_interval_identity(const RepTrace& trace) {
  IdentityReport report;
  const std::size_t steps = trace.steps();
  for (std::size_t b1 = 0; b1 < steps; ++b1) {
    const IndexSet& base = trace.at(b1 + 1, b1);
    for (std::size_t b2 = b1 + 1; b2 <= steps; ++b2) {
      IndexSet expected = base;
      for (auto v = static_cast<std::uint32_t>(2 * b1 + 2); v < 2 * b2; ++v) expected.push_back(v);
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
      ++report.checked;
      if (trace.at(b2, b1) != expected) {
        (b1 == 0 ? report.flagged_base : report.violations).push_back({b1, b2});
      }
    }
  }
  return report;
}

}  // namespace semispread
