#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "semispread/rational.hpp"

namespace semispread {

class GlfError : public std::runtime_error {
 public:
  enum class Kind {
    InvalidWeight,
    OutOfDomain,
    SearchBudgetExceeded,
    StepLimitExceeded,
    EmptySubset,
    InvalidArgument,
    NoQualifyingRounds,
  };

  GlfError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(GlfError::Kind kind);

/// Constant `value` on (previous end, end].
struct Segment {
  Rational end;
  Rational value;
};

/**
 * Nonincreasing piecewise-constant weight on (0, N] with w = 1 on (0, 2].
 *
 * Stored as breakpoints b_0 = 0 < b_1 = 2 < ... < b_k = N and values v_j on
 * (b_{j-1}, b_j]. Prefix integrals are cached so S(x) costs one binary
 * search plus a multiply-add.
 */
class PiecewiseWeight {
 public:
  /// Throws GlfError::InvalidWeight unless b_0 = 0, b_1 = 2, breakpoints
  /// strictly increase, v_1 = 1 and 0 < v_{j+1} <= v_j.
  PiecewiseWeight(std::vector<Rational> breakpoints, std::vector<Rational> values);

  /// w = 1 on (0, 2].
  static PiecewiseWeight unit();

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t segment_count() const { return values_.size(); }
  const Rational& domain_end() const { return breakpoints_.back(); }
  const Rational& terminal_value() const { return values_.back(); }

  /// Every value after (0, 2] is strictly below 1.
  bool strictly_subunit_tail() const;

  /// w(x) for 0 < x <= N (segments are closed on the right).
  const Rational& value_at(const Rational& x) const;
  /// lim w(t) as t decreases to x; the terminal value at x = N.
  const Rational& value_right_of(const Rational& x) const;
  /// S(x) = integral of w over (0, x], for 0 <= x <= N.
  Rational integral_to(const Rational& x) const;

  PiecewiseWeight extended(std::span<const Segment> tail) const;
  /// Restriction to (0, end]; `end` must be >= 2 and <= N.
  PiecewiseWeight truncated(const Rational& end) const;

  bool operator==(const PiecewiseWeight& other) const {
    return breakpoints_ == other.breakpoints_ && values_ == other.values_;
  }

 private:
  PiecewiseWeight() = default;
  std::size_t segment_index(const Rational& x) const;

  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  std::vector<Rational> prefix_;  // prefix_[j] = S(b_j)
};

/// S(x); throws GlfError::OutOfDomain unless 0 < x <= N.
Rational eval_S(const PiecewiseWeight& w, const Rational& x);

/// Exact pointwise comparison on the common domain; false if domains differ.
bool pointwise_leq(const PiecewiseWeight& a, const PiecewiseWeight& b);

enum class Verdict { Certified, Violated, Undetermined };
std::string_view to_string(Verdict v);

struct Box {
  Rational x_lo, x_hi, y_lo, y_hi;
};

struct CertificationResult {
  Verdict verdict = Verdict::Certified;
  Rational witness_x, witness_y;  ///< set when Violated
  Box open_box;                   ///< set when Undetermined
  std::uint64_t boxes_examined = 0;
  int max_depth = 0;
  int depth_budget = 0;
};

constexpr int kDefaultDepthBudget = 40;

/**
 * Decides S(xy) <= S(x) S(y) for 1 <= x, y with xy <= N.
 *
 * Points with min(x, y) <= 2 satisfy it for any nonincreasing w that is 1 on
 * (0, 2] (S(x) = x there and S(xy) - S(y) <= (x - 1) y w(y) <= (x - 1) S(y)),
 * so only R = {2 <= x <= y, xy <= N} is searched, by adaptive subdivision of
 * boxes in exact arithmetic. A box is accepted when either the corner bound
 * S(min(x_hi y_hi, N)) <= S(x_lo) S(y_lo) holds, or the bilinear minorant
 * built from one-sided slopes is nonnegative at all four corners.
 */
CertificationResult certify_glf(const PiecewiseWeight& w, int depth_budget = kDefaultDepthBudget);

/// Same decision restricted to points with xy > `certified_to`; used when
/// w restricted to (0, certified_to] is already known to be good.
CertificationResult certify_glf_above(const PiecewiseWeight& w, const Rational& certified_to,
                                      int depth_budget = kDefaultDepthBudget);

/// S(x) S(y) - S(xy); negative means S(xy) <= S(x) S(y) fails at (x, y).
Rational glf_slack(const PiecewiseWeight& w, const Rational& x, const Rational& y);

struct SearchOptions {
  int depth_budget = kDefaultDepthBudget;
  int search_budget = 64;
  int step_limit = 200;
  /// Cap each high step at N^2.
  bool clamp_square = true;
  unsigned jobs = 1;
};

/**
 * Constant c for (N, N_new] such that every member of G extended by c stays
 * good, with c < min terminal value, c <= eps, c (N_new - N) < eps and
 * c <= value_bound (when positive). Halving search from
 * min(eps / (2 (N_new - N)), eps, min terminal / 2).
 */
Rational extend_low(std::span<const PiecewiseWeight> G, const Rational& N_new, const Rational& eps,
                    const SearchOptions& options = {}, const Rational& value_bound = Rational(0));

/**
 * Appends constant steps until the added mass reaches K_target. Each step
 * aims at half the current minimum integral over G, uses a value no larger
 * than the previous step (and than cap), and is certified for every member
 * of G before being kept. Step ends stay integral when N is integral.
 */
std::vector<Segment> extend_high(std::span<const PiecewiseWeight> G, const Rational& K_target, const Rational& cap,
                                 const SearchOptions& options = {});

/// Certifies every weight above `certified_to`; returns false on the first
/// weight that is not Certified. Work is split over `jobs` threads.
bool certify_all_above(std::span<const PiecewiseWeight> weights, const Rational& certified_to, int depth_budget,
                       unsigned jobs);

}  // namespace semispread
