#pragma once

#include <utility>
#include <vector>

#include "semispread/glf.hpp"

namespace semispread {

/// Pairs (p, q) with p < q and p <= P, ordered by q then p, starting at
/// q = min_q. min_q = 2 enumerates every pair.
struct PairEnumeration {
  int min_q = 2;
  std::vector<std::pair<int, int>> prefix(int functions, int count) const;
};

/// One construction round: function p gets the high steps, everyone else
/// the constant `low`, both on (N_start, N_end].
struct RoundRecord {
  int p = 0;
  int q = 0;
  Rational K_prev;
  Rational eps;
  Rational N_start;
  Rational N_end;
  std::vector<Segment> high;
  Rational low;

  Rational high_mass() const;
  Rational low_mass() const { return low * (N_end - N_start); }
};

struct GLFFamily {
  int functions = 0;
  std::vector<RoundRecord> rounds;
  std::vector<Rational> K;  ///< K[0] = 2, K[i] after round i

  /// Subsets whose sups were certified during construction.
  std::vector<std::vector<int>> certified_subsets;
  SearchOptions search;
  PairEnumeration pairs;

  Rational N(std::size_t i) const { return i == 0 ? Rational(2) : rounds.at(i - 1).N_end; }
  PiecewiseWeight weight(int p) const;
};

struct FamilyOptions {
  int functions = 2;
  int rounds = 1;
  /// eps[i - 1] bounds the values placed in round i.
  std::vector<Rational> eps;
  PairEnumeration pairs;
  SearchOptions search;
  /// Subsets M whose sup must stay good. Empty means every nonempty subset.
  /// {1..P} is always added, the singletons unless add_singletons is off.
  std::vector<std::vector<int>> subsets;
  bool add_singletons = true;
};

/// eps_i = decay^i for i = 1..rounds.
std::vector<Rational> geometric_schedule(const Rational& decay, int rounds);

GLFFamily build_family(const FamilyOptions& options);

/// Pointwise sup of w_p over p in M (1-based); high on round i iff p_i in M.
PiecewiseWeight sup_weights(const GLFFamily& family, const std::vector<int>& M);

struct RatioRow {
  int round = 0;
  int q = 0;
  Rational K_prev;
  Rational N;
  Rational S_p;  ///< S_{p'}(N_i)
  Rational S_M;  ///< S_M(N_i)
  Rational ratio;
  Rational bound;  ///< q_i K_{i-1} / (K_{i-1} + 1)
  bool lower_ok = false;  ///< S_p >= q_i K_{i-1}
  bool upper_ok = false;  ///< S_M <= K_{i-1} + 1
};

struct RatioReport {
  std::vector<int> M;
  int p_prime = 0;
  std::vector<RatioRow> rows;
  Rational max_ratio;
  bool bounds_ok = true;
  bool strictly_increasing = true;
};

RatioReport ratio_report(const GLFFamily& family, const std::vector<int>& M, int p_prime);

}  // namespace semispread
