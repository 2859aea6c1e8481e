#include "semispread/family.hpp"

#include <algorithm>

namespace semispread {

std::vector<std::pair<int, int>> PairEnumeration::prefix(int functions, int count) const {
  std::vector<std::pair<int, int>> out;
  for (int q = std::max(min_q, 2); static_cast<int>(out.size()) < count; ++q) {
    for (int p = 1; p <= std::min(functions, q - 1) && static_cast<int>(out.size()) < count; ++p) {
      out.emplace_back(p, q);
    }
  }
  return out;
}

Rational RoundRecord::high_mass() const {
  Rational mass(0);
  Rational start = N_start;
  for (const auto& s : high) {
    mass += s.value * (s.end - start);
    start = s.end;
  }
  return mass;
}

std::vector<Rational> geometric_schedule(const Rational& decay, int rounds) {
  std::vector<Rational> eps;
  Rational e(1);
  for (int i = 1; i <= rounds; ++i) {
    e *= decay;
    eps.push_back(e);
  }
  return eps;
}

namespace {

void append_round(std::vector<Rational>& b, std::vector<Rational>& v, const RoundRecord& r, bool high) {
  if (high) {
    for (const auto& s : r.high) {
      b.push_back(s.end);
      v.push_back(s.value);
    }
  } else {
    b.push_back(r.N_end);
    v.push_back(r.low);
  }
}

std::vector<std::vector<int>> normalized_subsets(const FamilyOptions& o) {
  const int P = o.functions;
  std::vector<std::vector<int>> subsets = o.subsets;
  if (subsets.empty()) {
    if (P > 16) throw GlfError(GlfError::Kind::InvalidArgument, "too many functions to certify every subset");
    for (unsigned mask = 1; mask < (1u << P); ++mask) {
      std::vector<int> M;
      for (int p = 1; p <= P; ++p) {
        if (mask & (1u << (p - 1))) M.push_back(p);
      }
      subsets.push_back(std::move(M));
    }
  }
  std::vector<int> full;
  for (int p = 1; p <= P; ++p) {
    if (o.add_singletons) subsets.push_back({p});
    full.push_back(p);
  }
  subsets.push_back(full);
  for (auto& M : subsets) {
    std::sort(M.begin(), M.end());
    M.erase(std::unique(M.begin(), M.end()), M.end());
    if (M.empty()) throw GlfError(GlfError::Kind::EmptySubset, "subsets must be nonempty");
    if (M.front() < 1 || M.back() > P) throw GlfError(GlfError::Kind::InvalidArgument, "subset index out of range");
  }
  std::sort(subsets.begin(), subsets.end());
  subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
  return subsets;
}

bool contains(const std::vector<int>& M, int p) { return std::binary_search(M.begin(), M.end(), p); }

std::vector<PiecewiseWeight> distinct(std::vector<PiecewiseWeight> ws) {
  std::vector<PiecewiseWeight> out;
  for (auto& w : ws) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

PiecewiseWeight GLFFamily::weight(int p) const { return sup_weights(*this, {p}); }

GLFFamily build_family(const FamilyOptions& o) {
  using Kind = GlfError::Kind;
  if (o.functions < 2) throw GlfError(Kind::InvalidArgument, "need at least two functions");
  if (o.rounds < 1) throw GlfError(Kind::InvalidArgument, "need at least one round");
  if (static_cast<int>(o.eps.size()) < o.rounds) throw GlfError(Kind::InvalidArgument, "eps schedule too short");
  for (int i = 0; i < o.rounds; ++i) {
    if (!(o.eps[i] > 0) || (i > 0 && !(o.eps[i] < o.eps[i - 1]))) {
      throw GlfError(Kind::InvalidArgument, "eps schedule must be positive and strictly decreasing");
    }
  }

  GLFFamily family;
  family.functions = o.functions;
  family.search = o.search;
  family.pairs = o.pairs;
  family.certified_subsets = normalized_subsets(o);
  family.K.push_back(Rational(2));

  const auto& subsets = family.certified_subsets;
  std::vector<PiecewiseWeight> sups(subsets.size(), PiecewiseWeight::unit());

  const auto pairs = o.pairs.prefix(o.functions, o.rounds);
  for (int i = 1; i <= o.rounds; ++i) {
    const auto [p, q] = pairs[static_cast<std::size_t>(i - 1)];
    RoundRecord r;
    r.p = p;
    r.q = q;
    r.K_prev = family.K.back();
    r.eps = o.eps[static_cast<std::size_t>(i - 1)];
    r.N_start = family.N(static_cast<std::size_t>(i - 1));

    std::vector<PiecewiseWeight> high_group, low_group;
    for (std::size_t k = 0; k < subsets.size(); ++k) {
      (contains(subsets[k], p) ? high_group : low_group).push_back(sups[k]);
    }
    high_group = distinct(std::move(high_group));
    low_group = distinct(std::move(low_group));

    // Values of round i stay below every value of round i - 1, so each w_p
    // is nonincreasing whether or not its singleton is certified.
    Rational cap = r.eps;
    if (i > 1) cap = min(cap, family.rounds.back().low);
    for (const auto& w : high_group) cap = min(cap, w.terminal_value());

    const std::string where = "round " + std::to_string(i) + " (p=" + std::to_string(p) + ", q=" +
                              std::to_string(q) + "): ";
    try {
      r.high = extend_high(high_group, Rational(q * r.K_prev), cap, o.search);
      r.N_end = r.high.back().end;
      if (low_group.empty()) {
        r.low = min(r.high.back().value, Rational(1 / (2 * (r.N_end - r.N_start))));
      } else {
        r.low = extend_low(low_group, r.N_end, Rational(1), o.search, r.high.back().value);
      }
    } catch (const GlfError& e) {
      throw GlfError(e.kind(), where + e.what());
    }

    for (std::size_t k = 0; k < subsets.size(); ++k) {
      std::vector<Rational> b = sups[k].breakpoints();
      std::vector<Rational> v = sups[k].values();
      append_round(b, v, r, contains(subsets[k], p));
      sups[k] = PiecewiseWeight(std::move(b), std::move(v));
    }
    family.K.push_back(r.K_prev + r.high_mass());
    family.rounds.push_back(std::move(r));
  }
  return family;
}

PiecewiseWeight sup_weights(const GLFFamily& family, const std::vector<int>& M) {
  if (M.empty()) throw GlfError(GlfError::Kind::EmptySubset, "sup over an empty subset");
  for (int p : M) {
    if (p < 1 || p > family.functions) {
      throw GlfError(GlfError::Kind::InvalidArgument, "function index " + std::to_string(p) + " out of range");
    }
  }
  std::vector<Rational> b{Rational(0), Rational(2)};
  std::vector<Rational> v{Rational(1)};
  for (const auto& r : family.rounds) {
    append_round(b, v, r, std::find(M.begin(), M.end(), r.p) != M.end());
  }
  return PiecewiseWeight(std::move(b), std::move(v));
}

RatioReport ratio_report(const GLFFamily& family, const std::vector<int>& M, int p_prime) {
  if (std::find(M.begin(), M.end(), p_prime) != M.end()) {
    throw GlfError(GlfError::Kind::InvalidArgument, "p' must not belong to M");
  }
  const PiecewiseWeight wp = sup_weights(family, {p_prime});
  const PiecewiseWeight wM = sup_weights(family, M);

  RatioReport report;
  report.M = M;
  report.p_prime = p_prime;
  for (std::size_t i = 1; i <= family.rounds.size(); ++i) {
    const RoundRecord& r = family.rounds[i - 1];
    if (r.p != p_prime) continue;
    RatioRow row;
    row.round = static_cast<int>(i);
    row.q = r.q;
    row.K_prev = r.K_prev;
    row.N = r.N_end;
    row.S_p = wp.integral_to(r.N_end);
    row.S_M = wM.integral_to(r.N_end);
    row.ratio = row.S_p / row.S_M;
    row.bound = Rational(r.q * r.K_prev) / (r.K_prev + 1);
    row.lower_ok = row.S_p >= r.q * r.K_prev;
    row.upper_ok = row.S_M <= r.K_prev + 1;
    report.bounds_ok = report.bounds_ok && row.lower_ok && row.upper_ok && row.ratio >= row.bound;
    if (!report.rows.empty() && !(row.ratio > report.rows.back().ratio)) report.strictly_increasing = false;
    if (report.rows.empty() || row.ratio > report.max_ratio) report.max_ratio = row.ratio;
    report.rows.push_back(std::move(row));
  }
  if (report.rows.empty()) {
    throw GlfError(GlfError::Kind::NoQualifyingRounds,
                   "function " + std::to_string(p_prime) + " is never the high function");
  }
  return report;
}

}  // namespace semispread
