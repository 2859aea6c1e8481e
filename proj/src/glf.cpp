#include "semispread/glf.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace semispread {

std::string_view to_string(GlfError::Kind kind) {
  switch (kind) {
    case GlfError::Kind::InvalidWeight: return "InvalidWeight";
    case GlfError::Kind::OutOfDomain: return "OutOfDomain";
    case GlfError::Kind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case GlfError::Kind::StepLimitExceeded: return "StepLimitExceeded";
    case GlfError::Kind::EmptySubset: return "EmptySubset";
    case GlfError::Kind::InvalidArgument: return "InvalidArgument";
    case GlfError::Kind::NoQualifyingRounds: return "NoQualifyingRounds";
  }
  return "Unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Violated: return "Violated";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// PiecewiseWeight

PiecewiseWeight::PiecewiseWeight(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  using Kind = GlfError::Kind;
  if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
    throw GlfError(Kind::InvalidWeight, "need k+1 breakpoints for k values, k >= 1");
  }
  if (breakpoints_[0] != 0 || breakpoints_[1] != 2) {
    throw GlfError(Kind::InvalidWeight, "breakpoints must start 0, 2");
  }
  if (values_[0] != 1) throw GlfError(Kind::InvalidWeight, "weight must be 1 on (0, 2]");
  for (std::size_t j = 1; j < values_.size(); ++j) {
    if (!(breakpoints_[j] < breakpoints_[j + 1])) {
      throw GlfError(Kind::InvalidWeight, "breakpoints must strictly increase");
    }
    if (!(values_[j] > 0) || values_[j] > values_[j - 1]) {
      throw GlfError(Kind::InvalidWeight, "values must be positive and nonincreasing");
    }
  }
  prefix_.resize(breakpoints_.size());
  prefix_[0] = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    prefix_[j + 1] = prefix_[j] + values_[j] * (breakpoints_[j + 1] - breakpoints_[j]);
  }
}

PiecewiseWeight PiecewiseWeight::unit() { return PiecewiseWeight({Rational(0), Rational(2)}, {Rational(1)}); }

bool PiecewiseWeight::strictly_subunit_tail() const {
  return std::all_of(values_.begin() + 1, values_.end(), [](const Rational& v) { return v < 1; });
}

std::size_t PiecewiseWeight::segment_index(const Rational& x) const {
  // first breakpoint >= x; x lies in (b_{k-1}, b_k]
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  return k == 0 ? 0 : k - 1;
}

const Rational& PiecewiseWeight::value_at(const Rational& x) const {
  if (!(x > 0) || x > domain_end()) throw GlfError(GlfError::Kind::OutOfDomain, "w(x) outside (0, N]");
  return values_[segment_index(x)];
}

const Rational& PiecewiseWeight::value_right_of(const Rational& x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.end()) return values_.back();
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  return values_[k == 0 ? 0 : k - 1];
}

Rational PiecewiseWeight::integral_to(const Rational& x) const {
  if (x < 0 || x > domain_end()) throw GlfError(GlfError::Kind::OutOfDomain, "S(x) outside [0, N]");
  if (x == 0) return Rational(0);
  const std::size_t j = segment_index(x);
  Rational s = x - breakpoints_[j];
  s *= values_[j];
  s += prefix_[j];
  return s;
}

PiecewiseWeight PiecewiseWeight::extended(std::span<const Segment> tail) const {
  std::vector<Rational> b = breakpoints_;
  std::vector<Rational> v = values_;
  b.reserve(b.size() + tail.size());
  v.reserve(v.size() + tail.size());
  for (const auto& s : tail) {
    b.push_back(s.end);
    v.push_back(s.value);
  }
  return PiecewiseWeight(std::move(b), std::move(v));
}

PiecewiseWeight PiecewiseWeight::truncated(const Rational& end) const {
  if (end < 2 || end > domain_end()) throw GlfError(GlfError::Kind::OutOfDomain, "truncation outside [2, N]");
  const std::size_t j = segment_index(end);
  std::vector<Rational> b(breakpoints_.begin(), breakpoints_.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  std::vector<Rational> v(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  b.push_back(end);
  return PiecewiseWeight(std::move(b), std::move(v));
}

Rational eval_S(const PiecewiseWeight& w, const Rational& x) {
  if (!(x > 0) || x > w.domain_end()) throw GlfError(GlfError::Kind::OutOfDomain, "eval_S requires 0 < x <= N");
  return w.integral_to(x);
}

bool pointwise_leq(const PiecewiseWeight& a, const PiecewiseWeight& b) {
  if (a.domain_end() != b.domain_end()) return false;
  // Both are constant between consecutive points of the merged breakpoint
  // set, so comparing at each right end suffices.
  std::vector<Rational> points;
  std::merge(a.breakpoints().begin() + 1, a.breakpoints().end(), b.breakpoints().begin() + 1,
             b.breakpoints().end(), std::back_inserter(points));
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return std::all_of(points.begin(), points.end(),
                     [&](const Rational& p) { return a.value_at(p) <= b.value_at(p); });
}

Rational glf_slack(const PiecewiseWeight& w, const Rational& x, const Rational& y) {
  return w.integral_to(x) * w.integral_to(y) - w.integral_to(Rational(x * y));
}

// ---------------------------------------------------------------------------
// Certifier

namespace {

Rational split_point(const Rational& lo, const Rational& hi) {
  if (hi >= 4 * lo) {
    const long k = (approx_log2(lo) + approx_log2(hi)) / 2;
    Rational m(1);
    if (k >= 0) {
      mpq_mul_2exp(m.get_mpq_t(), m.get_mpq_t(), static_cast<unsigned long>(k));
    } else {
      mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), static_cast<unsigned long>(-k));
    }
    if (lo < m && m < hi) return m;
  }
  Rational mid = lo + hi;
  mid /= 2;
  return mid;
}

struct Frame {
  Box box;
  int depth;
};

class Certifier {
 public:
  Certifier(const PiecewiseWeight& w, Rational lower, int budget) : w_(w), N_(w.domain_end()), lower_(std::move(lower)) {
    result_.depth_budget = budget;
  }

  CertificationResult run() {
    if (N_ < 4 || lower_ >= N_) return result_;
    if (probe()) return result_;

    // x <= sqrt(N) on R; the first power of two with X^2 >= N bounds it.
    Rational X(2);
    while (X * X < N_) X *= 2;
    Rational Y = N_ / 2;
    if (X > Y) X = Y;

    std::vector<Frame> stack;
    stack.push_back({{Rational(2), X, Rational(2), Y}, 0});
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      ++result_.boxes_examined;
      result_.max_depth = std::max(result_.max_depth, f.depth);
      if (!relevant(f.box)) continue;
      if (accepted(f.box)) continue;
      if (corner_slack_ < 0) {
        result_.verdict = Verdict::Violated;
        result_.witness_x = min(f.box.x_lo, f.box.y_lo);
        result_.witness_y = max(f.box.x_lo, f.box.y_lo);
        return result_;
      }
      if (f.box.x_lo == f.box.x_hi && f.box.y_lo == f.box.y_hi) continue;  // exact point, slack >= 0
      if (f.depth >= result_.depth_budget) {
        result_.verdict = Verdict::Undetermined;
        result_.open_box = f.box;
        return result_;
      }
      split(f, stack);
    }
    return result_;
  }

 private:
  bool relevant(const Box& b) const {
    if (b.x_lo * b.y_lo > N_) return false;
    if (b.x_lo > b.y_hi) return false;
    if (b.x_hi * b.y_hi <= lower_) return false;
    return true;
  }

  // Structured probes first so a violation reports the worst point among
  // the natural candidates rather than whatever the box order hits first.
  bool probe() {
    std::vector<std::pair<Rational, Rational>> points;
    points.emplace_back(Rational(2), Rational(N_ / 2));
    for (const auto& b : w_.breakpoints()) {
      if (b > 2 && b * b <= N_) points.emplace_back(b, Rational(N_ / b));
    }
    if (Rational r; exact_sqrt(N_, r) && r >= 2) points.emplace_back(r, r);

    std::optional<Rational> worst;
    for (const auto& [x, y] : points) {
      if (x * y <= lower_) continue;
      Rational s = glf_slack(w_, x, y);
      if (s < 0 && (!worst || s < *worst)) {
        worst = s;
        result_.witness_x = x;
        result_.witness_y = y;
      }
    }
    if (worst) result_.verdict = Verdict::Violated;
    return worst.has_value();
  }

  bool accepted(const Box& b) {
    const Rational A = w_.integral_to(b.x_lo);
    const Rational B = w_.integral_to(b.y_lo);
    const Rational p_lo = b.x_lo * b.y_lo;
    const Rational C = w_.integral_to(p_lo);
    const Rational AB = A * B;
    corner_slack_ = AB - C;
    if (corner_slack_ < 0) return false;

    const Rational p_hi = b.x_hi * b.y_hi;
    if (w_.integral_to(p_hi < N_ ? p_hi : N_) <= AB) return true;

    // S(x) >= A + a (x - x_lo), S(y) >= B + b (y - y_lo) and
    // S(xy) <= C + c (xy - p_lo) on the box; the difference is bilinear in
    // (x, y), so its minimum over the box sits at a corner.
    const Rational& a = w_.value_at(b.x_hi);
    const Rational& bb = w_.value_at(b.y_hi);
    const Rational& c = w_.value_right_of(p_lo);
    const Rational Ax = A + a * (b.x_hi - b.x_lo);
    const Rational By = B + bb * (b.y_hi - b.y_lo);
    const Rational g10 = Ax * B - C - c * (b.x_hi * b.y_lo - p_lo);
    if (g10 < 0) return false;
    const Rational g01 = A * By - C - c * (b.x_lo * b.y_hi - p_lo);
    if (g01 < 0) return false;
    const Rational g11 = Ax * By - C - c * (p_hi - p_lo);
    return g11 >= 0;
  }

  static void split(Frame& f, std::vector<Frame>& stack) {
    Box& b = f.box;
    bool along_x;
    if (b.x_lo == b.x_hi) {
      along_x = false;
    } else if (b.y_lo == b.y_hi) {
      along_x = true;
    } else {
      along_x = b.x_hi * b.y_lo >= b.y_hi * b.x_lo;  // compare x_hi/x_lo with y_hi/y_lo
    }
    Box lower = b;
    Box upper = b;
    if (along_x) {
      const Rational m = split_point(b.x_lo, b.x_hi);
      lower.x_hi = m;
      upper.x_lo = m;
    } else {
      const Rational m = split_point(b.y_lo, b.y_hi);
      lower.y_hi = m;
      upper.y_lo = m;
    }
    stack.push_back({std::move(upper), f.depth + 1});
    stack.push_back({std::move(lower), f.depth + 1});
  }

  const PiecewiseWeight& w_;
  const Rational N_;
  const Rational lower_;
  Rational corner_slack_;
  CertificationResult result_;
};

}  // namespace

CertificationResult certify_glf(const PiecewiseWeight& w, int depth_budget) {
  return Certifier(w, Rational(0), depth_budget).run();
}

CertificationResult certify_glf_above(const PiecewiseWeight& w, const Rational& certified_to, int depth_budget) {
  return Certifier(w, certified_to, depth_budget).run();
}

bool certify_all_above(std::span<const PiecewiseWeight> weights, const Rational& certified_to, int depth_budget,
                       unsigned jobs) {
  if (jobs <= 1 || weights.size() <= 1) {
    return std::all_of(weights.begin(), weights.end(), [&](const PiecewiseWeight& w) {
      return certify_glf_above(w, certified_to, depth_budget).verdict == Verdict::Certified;
    });
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> ok{true};
  auto worker = [&] {
    for (std::size_t i = next++; i < weights.size() && ok; i = next++) {
      if (certify_glf_above(weights[i], certified_to, depth_budget).verdict != Verdict::Certified) ok = false;
    }
  };
  std::vector<std::jthread> pool;
  const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(weights.size()));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  pool.clear();
  return ok;
}

// ---------------------------------------------------------------------------
// Extensions

namespace {

const Rational& common_end(std::span<const PiecewiseWeight> G) {
  if (G.empty()) throw GlfError(GlfError::Kind::InvalidArgument, "extension needs a nonempty set of weights");
  const Rational& N = G.front().domain_end();
  for (const auto& w : G) {
    if (w.domain_end() != N) throw GlfError(GlfError::Kind::InvalidArgument, "weights must share their domain");
  }
  return N;
}

Rational min_terminal(std::span<const PiecewiseWeight> G) {
  Rational m = G.front().terminal_value();
  for (const auto& w : G) {
    if (w.terminal_value() < m) m = w.terminal_value();
  }
  return m;
}

bool all_extend(std::span<const PiecewiseWeight> G, const Segment& seg, const Rational& N, const SearchOptions& o) {
  std::vector<PiecewiseWeight> candidates;
  candidates.reserve(G.size());
  for (const auto& w : G) candidates.push_back(w.extended(std::span(&seg, 1)));
  return certify_all_above(candidates, N, o.depth_budget, o.jobs);
}

}  // namespace

Rational extend_low(std::span<const PiecewiseWeight> G, const Rational& N_new, const Rational& eps,
                    const SearchOptions& options, const Rational& value_bound) {
  const Rational& N = common_end(G);
  if (!(N_new > N)) throw GlfError(GlfError::Kind::InvalidArgument, "N_new must exceed the current domain end");
  const Rational length = N_new - N;
  const Rational terminal = min_terminal(G);

  Rational c = min(Rational(eps / (2 * length)), min(eps, Rational(terminal / 2)));
  if (value_bound > 0) c = min(c, value_bound);
  for (int attempt = 0; attempt <= options.search_budget; ++attempt, c /= 2) {
    if (!(c > 0) || !(c < terminal) || c > eps || !(c * length < eps)) continue;
    if (value_bound > 0 && c > value_bound) continue;
    if (all_extend(G, Segment{N_new, c}, N, options)) return c;
  }
  throw GlfError(GlfError::Kind::SearchBudgetExceeded,
                 "no certified low extension within " + std::to_string(options.search_budget) + " halvings");
}

std::vector<Segment> extend_high(std::span<const PiecewiseWeight> G, const Rational& K_target, const Rational& cap,
                                 const SearchOptions& options) {
  const Rational& N0 = common_end(G);
  std::vector<Segment> segments;
  if (!(K_target > 0)) return segments;
  if (!(cap > 0) || cap > min_terminal(G)) {
    throw GlfError(GlfError::Kind::InvalidArgument, "cap must lie in (0, min terminal value]");
  }

  std::vector<PiecewiseWeight> current(G.begin(), G.end());
  Rational N = N0;
  Rational added(0);
  Rational c = cap;
  while (added < K_target) {
    if (static_cast<int>(segments.size()) >= options.step_limit) {
      throw GlfError(GlfError::Kind::StepLimitExceeded,
                     "high extension needs more than " + std::to_string(options.step_limit) + " steps");
    }
    Rational smallest = current.front().integral_to(N);
    for (const auto& w : current) smallest = min(smallest, w.integral_to(N));
    const Rational target = smallest / 2;

    // Candidates start at value c over the length that carries `target`.
    // Each failure squares end / N until the cap N^2, then halves the value.
    const Rational square = N * N;
    Rational end = N + Rational(semispread::ceil(Rational(target / c)));
    if (options.clamp_square && end > square) end = square;
    Rational bound = c;
    std::optional<Segment> step;
    for (int attempt = 0; attempt <= options.search_budget; ++attempt) {
      Segment seg{end, min(bound, Rational(target / (end - N)))};
      if (all_extend(current, seg, N, options)) {
        step = std::move(seg);
        break;
      }
      if (!options.clamp_square || end < square) {
        const Rational ratio = end / N;
        end = Rational(semispread::ceil(Rational(N * ratio * ratio)));
        if (options.clamp_square && end > square) end = square;
      } else {
        bound = seg.value / 2;
      }
    }
    if (!step) {
      throw GlfError(GlfError::Kind::SearchBudgetExceeded,
                     "no certified high step within " + std::to_string(options.search_budget) + " attempts");
    }
    for (auto& w : current) w = w.extended(std::span(&*step, 1));
    c = step->value;
    added += step->value * (step->end - N);
    N = step->end;
    segments.push_back(std::move(*step));
  }
  return segments;
}

}  // namespace semispread
