#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semispread/family.hpp"
#include "semispread/representation.hpp"
#include "semispread/semilattice.hpp"

namespace semispread {

class SpdwError : public std::runtime_error {
 public:
  enum class Kind { InvalidArgument, InsufficientRounds, CorpusTooLarge };
  SpdwError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Every join-semilattice with at most `max_size` elements, one per
/// isomorphism class, ordered by size. Elements are named a, b, c, ...
/// Throws CorpusTooLarge above 6.
std::vector<JoinTable> generate_corpus(int max_size);

/// Random join-semilattice with at most `max_size` elements: a random
/// poset closed under inserting missing joins. Deterministic in `seed`.
JoinTable random_join_semilattice(std::uint64_t seed, int max_size);

struct ModelOptions {
  int rounds = 12;
  Rational eps_decay{1, 2};
  /// Smallest q in the pair enumeration; 0 means |V| + 1, so the first
  /// |V| rounds select every member of V once.
  int min_q = 0;
  SearchOptions search;
};

enum class PairVerdict { Domination, Incomparable, Undecided };
std::string_view to_string(PairVerdict v);

struct ModelReport {
  JoinTable lattice;
  Enumeration enumeration;
  RepMap rep;
  std::vector<std::uint32_t> V;  ///< ascending; v = V[p - 1] for function p
  GLFFamily family;
  ModelOptions options;
  std::vector<std::vector<int>> subsets;  ///< T(e) as function indices, by element
  std::vector<PiecewiseWeight> weights;   ///< sup over T(e), by element
  /// Relation predicted by T: Domination iff T(e1) is a subset of T(e2).
  std::vector<std::vector<PairVerdict>> theta_table;
};

ModelReport build_model(const JoinTable& table, const ModelOptions& options = {});

/// Rebuilds the derived fields (V, subsets, weights, theta table) after
/// lattice, enumeration, rep, family and options have been set.
void complete_model(ModelReport& model);

struct DominationWitness {
  bool pointwise = false;
  std::size_t norm_trials = 0;
  bool norms_ok = true;
};

struct IncomparabilityWitness {
  std::uint32_t v = 0;
  int p = 0;
  RatioReport ratios;
  bool threshold_met = false;
};

struct PairResult {
  std::size_t e1 = 0, e2 = 0;
  bool leq = false;  ///< lattice order
  PairVerdict verdict = PairVerdict::Undecided;
  std::optional<DominationWitness> domination;
  std::optional<IncomparabilityWitness> incomparability;
  std::string note;
  bool matches = false;
};

struct OrderIsoReport {
  Rational threshold;
  std::uint64_t seed = 0;
  std::size_t norm_trials = 0;
  std::vector<Verdict> certification;  ///< full certification of each weight
  bool weights_certified = true;
  bool weights_distinct = true;
  bool ratios_increasing = true;  ///< across qualifying rounds, every pair
  std::vector<PairResult> pairs;  ///< row-major over (e1, e2)
  bool passed = false;
};

/**
 * For e1 <= e2 checks exact pointwise domination of the weights plus
 * `norm_trials` random norm comparisons. Otherwise takes the least v in
 * T(e1) \ T(e2) and reports the ratio rows of w_v against the sup over
 * T(e2). Passes iff every verdict matches the lattice order.
 */
OrderIsoReport verify_order_iso(const ModelReport& model, const Rational& threshold, std::uint64_t seed,
                                std::size_t norm_trials = 100);

}  // namespace semispread
