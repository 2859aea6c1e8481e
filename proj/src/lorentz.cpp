#include "semispread/lorentz.hpp"

#include <algorithm>
#include <functional>

namespace semispread {

LorentzSeq::LorentzSeq(std::vector<Rational> weights) : w_(std::move(weights)) {
  using Kind = LorentzError::Kind;
  if (w_.empty() || w_.front() != 1) throw LorentzError(Kind::InvalidSequence, "need w(1) = 1");
  S_.reserve(w_.size() + 1);
  S_.emplace_back(0);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!(w_[i] > 0) || (i > 0 && w_[i] > w_[i - 1])) {
      throw LorentzError(Kind::InvalidSequence, "weights must be positive and nonincreasing");
    }
    S_.push_back(S_.back() + w_[i]);
  }
}

std::vector<double> LorentzSeq::weights_double() const {
  std::vector<double> out;
  out.reserve(w_.size());
  for (const auto& v : w_) out.push_back(v.get_d());
  return out;
}

LorentzSeq sample_weights(const PiecewiseWeight& w, std::size_t N_max) {
  if (N_max == 0 || Rational(N_max) > w.domain_end()) {
    throw LorentzError(LorentzError::Kind::OutOfDomain, "N_max outside the weight's domain");
  }
  std::vector<Rational> values;
  values.reserve(N_max);
  for (std::size_t n = 1; n <= N_max; ++n) values.push_back(w.value_at(Rational(n)));
  return LorentzSeq(std::move(values));
}

Rational lorentz_norm(std::span<const Rational> a, const LorentzSeq& seq) {
  if (a.size() > seq.size()) throw LorentzError(LorentzError::Kind::VectorTooLong, "vector longer than N_max");
  std::vector<Rational> mags(a.begin(), a.end());
  for (auto& m : mags) m = abs(m);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  Rational sum(0);
  for (std::size_t i = 0; i < mags.size(); ++i) sum += mags[i] * seq.w(i + 1);
  return sum;
}

double lorentz_norm(std::span<const double> a, std::span<const double> w) {
  if (a.size() > w.size()) throw LorentzError(LorentzError::Kind::VectorTooLong, "vector longer than N_max");
  std::vector<double> mags(a.size());
  std::transform(a.begin(), a.end(), mags.begin(), [](double x) { return x < 0 ? -x : x; });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double sum = 0;
  for (std::size_t i = 0; i < mags.size(); ++i) sum += mags[i] * w[i];
  return sum;
}

SubmultResult check_submultiplicative(const LorentzSeq& seq, const Rational& C, std::size_t bound) {
  if (bound > seq.size()) throw LorentzError(LorentzError::Kind::OutOfDomain, "bound exceeds N_max");
  SubmultResult result;
  Rational rhs;
  for (std::size_t m = 1; m <= bound; ++m) {
    const Rational CSm = C * seq.S(m);
    for (std::size_t n = 1; m * n <= bound; ++n) {
      ++result.pairs_checked;
      rhs = CSm * seq.S(n);
      if (seq.S(m * n) > rhs) {
        result.pass = false;
        result.m = m;
        result.n = n;
        result.lhs = seq.S(m * n);
        result.rhs = rhs;
        return result;
      }
    }
  }
  return result;
}

DominationRatio domination_ratio(const LorentzSeq& seq1, const LorentzSeq& seq2, std::size_t N) {
  if (N == 0 || N > seq1.size() || N > seq2.size()) {
    throw LorentzError(LorentzError::Kind::OutOfDomain, "N exceeds a sequence length");
  }
  DominationRatio best{seq1.S(1) / seq2.S(1), 1};
  for (std::size_t n = 2; n <= N; ++n) {
    Rational r = seq1.S(n) / seq2.S(n);
    if (r > best.ratio) best = {std::move(r), n};
  }
  return best;
}

LorentzSeq pointwise_max(const LorentzSeq& a, const LorentzSeq& b) {
  if (a.size() != b.size()) throw LorentzError(LorentzError::Kind::OutOfDomain, "length mismatch");
  std::vector<Rational> w;
  w.reserve(a.size());
  for (std::size_t n = 1; n <= a.size(); ++n) w.push_back(max(a.w(n), b.w(n)));
  return LorentzSeq(std::move(w));
}

std::int64_t RandomVectors::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng_() % span);
}

std::vector<Rational> RandomVectors::next(std::size_t length) {
  std::vector<Rational> a(length, Rational(0));
  if (length == 0) return a;
  const std::uint64_t pattern = count_++ % 4;
  switch (pattern) {
    case 0: {  // sparse uniform
      const std::int64_t keep = uniform(1, 100);
      for (auto& x : a) {
        if (uniform(1, 100) <= keep) x = fraction(uniform(-1000, 1000), 1000);
      }
      break;
    }
    case 1: {  // constant block
      const auto start = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(length) - 1));
      const auto len = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(length - start)));
      const Rational level(uniform(1, 1000), 1000);
      for (std::size_t i = start; i < start + len; ++i) a[i] = uniform(0, 1) ? level : Rational(-level);
      break;
    }
    case 2: {  // single spike over low noise
      for (auto& x : a) x = fraction(uniform(-5, 5), 1000);
      a[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(length) - 1))] = fraction(uniform(500, 1000), 1000);
      break;
    }
    default: {  // geometric decay, shuffled signs and positions
      Rational v(uniform(1, 1000), 1000);
      for (auto& x : a) {
        x = uniform(0, 1) ? v : Rational(-v);
        v /= 2;
      }
      std::shuffle(a.begin(), a.end(), rng_);
      break;
    }
  }
  if (std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; })) a[0] = Rational(1, 1000);
  return a;
}

JoinEquivalenceReport join_equivalence_check(const PiecewiseWeight& w1, const PiecewiseWeight& w2,
                                             std::size_t N_max, std::size_t trials, std::uint64_t seed,
                                             bool exact) {
  const LorentzSeq s1 = sample_weights(w1, N_max);
  const LorentzSeq s2 = sample_weights(w2, N_max);
  const LorentzSeq sj = pointwise_max(s1, s2);
  JoinEquivalenceReport report;
  report.trials = trials;
  report.exact = exact;
  report.tolerance = exact ? 0.0 : 1e-9;
  RandomVectors gen(seed);
  const auto d1 = s1.weights_double(), d2 = s2.weights_double(), dj = sj.weights_double();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = gen.next(N_max);
    if (exact) {
      const Rational r = (lorentz_norm(a, s1) + lorentz_norm(a, s2)) / lorentz_norm(a, sj);
      if (t == 0 || r < report.min_ratio) report.min_ratio = r;
      if (t == 0 || r > report.max_ratio) report.max_ratio = r;
      if ((r < 1 || r > 2) && report.within_bounds) {
        report.within_bounds = false;
        report.witness = a;
      }
    } else {
      std::vector<double> ad;
      ad.reserve(a.size());
      for (const auto& x : a) ad.push_back(x.get_d());
      const double r = (lorentz_norm(ad, d1) + lorentz_norm(ad, d2)) / lorentz_norm(ad, dj);
      if (t == 0 || r < report.min_ratio_fp) report.min_ratio_fp = r;
      if (t == 0 || r > report.max_ratio_fp) report.max_ratio_fp = r;
      if ((r < 1 - report.tolerance || r > 2 + report.tolerance) && report.within_bounds) {
        report.within_bounds = false;
        report.witness = a;
      }
    }
  }
  return report;
}

}  // namespace semispread
