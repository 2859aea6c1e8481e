#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "semispread/glf.hpp"

namespace semispread {

class LorentzError : public std::runtime_error {
 public:
  enum class Kind { InvalidSequence, OutOfDomain, VectorTooLong };
  LorentzError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Finite truncation w(1..N_max) of a Lorentz sequence with prefix sums.
class LorentzSeq {
 public:
  /// Requires w(1) = 1 and 0 < w(n+1) <= w(n).
  explicit LorentzSeq(std::vector<Rational> weights);

  std::size_t size() const { return w_.size(); }
  /// 1-based.
  const Rational& w(std::size_t n) const { return w_.at(n - 1); }
  /// S(0) = 0.
  const Rational& S(std::size_t n) const { return S_.at(n); }
  const std::vector<Rational>& weights() const { return w_; }
  std::vector<double> weights_double() const;

 private:
  std::vector<Rational> w_;
  std::vector<Rational> S_;
};

LorentzSeq sample_weights(const PiecewiseWeight& w, std::size_t N_max);

/// sum a*_n w(n), a* the nonincreasing rearrangement of |a|.
Rational lorentz_norm(std::span<const Rational> a, const LorentzSeq& seq);
double lorentz_norm(std::span<const double> a, std::span<const double> w);

struct SubmultResult {
  bool pass = true;
  std::size_t m = 0, n = 0;  ///< lexicographically least failing pair
  Rational lhs, rhs;         ///< S(mn) and C S(m) S(n) at the witness
  std::uint64_t pairs_checked = 0;
};

/// Brute force over all m, n >= 1 with mn <= bound.
SubmultResult check_submultiplicative(const LorentzSeq& seq, const Rational& C, std::size_t bound);

struct DominationRatio {
  Rational ratio;
  std::size_t at = 1;
};

/// max over n <= N of S1(n) / S2(n).
DominationRatio domination_ratio(const LorentzSeq& seq1, const LorentzSeq& seq2, std::size_t N);

/// Pointwise max of two sequences of equal length.
LorentzSeq pointwise_max(const LorentzSeq& a, const LorentzSeq& b);

/**
 * Seeded source of test vectors with entries k/1000 in [-1, 1]. Cycles
 * through sparse uniform vectors, constant blocks, single spikes and
 * geometric decay so the rearrangement sees ties, gaps and long tails.
 */
class RandomVectors {
 public:
  explicit RandomVectors(std::uint64_t seed) : rng_(seed) {}
  std::vector<Rational> next(std::size_t length);

 private:
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  std::mt19937_64 rng_;
  std::uint64_t count_ = 0;
};

struct JoinEquivalenceReport {
  std::size_t trials = 0;
  bool exact = true;
  double tolerance = 0;
  Rational min_ratio, max_ratio;  ///< exact mode
  double min_ratio_fp = 0, max_ratio_fp = 0;
  bool within_bounds = true;
  std::vector<Rational> witness;  ///< first vector outside [1, 2]
};

/// r(a) = (|a|_{w1} + |a|_{w2}) / |a|_{w1 v w2}; since w <= w1 + w2 <= 2w
/// pointwise for w = max(w1, w2), r lies in [1, 2] for every a != 0.
JoinEquivalenceReport join_equivalence_check(const PiecewiseWeight& w1, const PiecewiseWeight& w2,
                                             std::size_t N_max, std::size_t trials, std::uint64_t seed,
                                             bool exact = true);

}  // namespace semispread
