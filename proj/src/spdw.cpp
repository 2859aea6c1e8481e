#include "semispread/spdw.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "semispread/lorentz.hpp"

namespace semispread {

namespace {

using Matrix = std::vector<std::uint8_t>;

bool has_join(const Matrix& r, std::size_t n, std::size_t a, std::size_t b) {
  for (std::size_t l = 0; l < n; ++l) {
    if (!r[a * n + l] || !r[b * n + l]) continue;
    bool least = true;
    for (std::size_t u = 0; u < n && least; ++u) {
      if (r[a * n + u] && r[b * n + u] && !r[l * n + u]) least = false;
    }
    if (least) return true;
  }
  return false;
}

std::optional<std::pair<std::size_t, std::size_t>> missing_join(const Matrix& r, std::size_t n) {
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!has_join(r, n, a, b)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

Matrix permuted(const Matrix& r, std::size_t n, const std::vector<std::size_t>& perm) {
  Matrix out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = r[perm[i] * n + perm[j]];
  }
  return out;
}

Matrix canonical(const Matrix& r, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Matrix best = r;
  do {
    Matrix m = permuted(r, n, perm);
    if (m < best) best = std::move(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void close_transitively(Matrix& r, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k * n + j]) r[i * n + j] = 1;
      }
    }
  }
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); }

}  // namespace

std::string_view to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::Domination: return "Domination";
    case PairVerdict::Incomparable: return "Incomparable";
    case PairVerdict::Undecided: return "Undecided";
  }
  return "?";
}

std::vector<JoinTable> generate_corpus(int max_size) {
  if (max_size > 6) throw SpdwError(SpdwError::Kind::CorpusTooLarge, "exhaustive corpus is limited to 6 elements");
  std::vector<JoinTable> corpus;
  for (int size = 1; size <= max_size; ++size) {
    const auto n = static_cast<std::size_t>(size);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.emplace_back(1, static_cast<char>('a' + i));

    // Every poset has a linear extension, so strictly upper-triangular
    // relations reach every isomorphism class.
    std::set<Matrix> seen;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      Matrix r(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask & (1u << s)) r[slots[s].first * n + slots[s].second] = 1;
      }
      bool transitive = true;
      for (std::size_t i = 0; i < n && transitive; ++i) {
        for (std::size_t j = i + 1; j < n && transitive; ++j) {
          if (!r[i * n + j]) continue;
          for (std::size_t k = j + 1; k < n; ++k) {
            if (r[j * n + k] && !r[i * n + k]) {
              transitive = false;
              break;
            }
          }
        }
      }
      if (!transitive || missing_join(r, n)) continue;
      seen.insert(canonical(r, n));
    }
    for (const auto& m : seen) corpus.push_back(JoinTable::from_closed_order(ids, m));
  }
  return corpus;
}

JoinTable random_join_semilattice(std::uint64_t seed, int max_size) {
  if (max_size < 1) throw SpdwError(SpdwError::Kind::InvalidArgument, "max_size must be positive");
  const auto cap = static_cast<std::size_t>(max_size);
  std::mt19937_64 rng(seed);
  for (;;) {
    std::size_t n = draw(rng, 1, std::max<std::uint64_t>(1, (2 * cap + 2) / 3));
    const std::uint64_t density = draw(rng, 10, 70);
    Matrix r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      r[i * n + i] = 1;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (draw(rng, 1, 100) <= density) r[i * n + j] = 1;
      }
    }
    close_transitively(r, n);

    bool fits = true;
    while (auto gap = missing_join(r, n)) {
      if (n == cap) {
        fits = false;
        break;
      }
      // New z with a, b <= z <= every common upper bound becomes the join.
      const auto [a, b] = *gap;
      const std::size_t m = n + 1;
      Matrix grown(m * m, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) grown[i * m + j] = r[i * n + j];
      }
      for (std::size_t x = 0; x < n; ++x) {
        if (r[x * n + a] || r[x * n + b]) grown[x * m + n] = 1;
        if (r[a * n + x] && r[b * n + x]) grown[n * m + x] = 1;
      }
      grown[n * m + n] = 1;
      r = std::move(grown);
      n = m;
    }
    if (!fits) continue;

    std::vector<std::size_t> names(n);
    std::iota(names.begin(), names.end(), 0);
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back((names[i] < 10 ? "v0" : "v") + std::to_string(names[i]));
    return JoinTable::from_closed_order(std::move(ids), std::move(r));
  }
}

void complete_model(ModelReport& model) {
  const std::size_t n = model.lattice.size();
  std::set<std::uint32_t> all;
  for (const auto& s : model.rep.sets) all.insert(s.begin(), s.end());
  model.V.assign(all.begin(), all.end());

  model.subsets.clear();
  for (const auto& s : model.rep.sets) {
    std::vector<int> M;
    for (auto v : s) {
      M.push_back(static_cast<int>(std::lower_bound(model.V.begin(), model.V.end(), v) - model.V.begin()) + 1);
    }
    model.subsets.push_back(std::move(M));
  }
  model.weights.clear();
  for (const auto& M : model.subsets) model.weights.push_back(sup_weights(model.family, M));

  model.theta_table.assign(n, std::vector<PairVerdict>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      model.theta_table[a][b] =
          is_subset(model.rep.sets[a], model.rep.sets[b]) ? PairVerdict::Domination : PairVerdict::Incomparable;
    }
  }
}

ModelReport build_model(const JoinTable& table, const ModelOptions& options) {
  if (options.rounds < 1) throw SpdwError(SpdwError::Kind::InvalidArgument, "rounds must be positive");
  ModelReport model;
  model.lattice = table;
  model.options = options;
  model.enumeration = enumerate_elements(table, layer_decomposition(table));
  model.rep = build_representation(model.enumeration, table).first;

  std::set<std::uint32_t> all;
  for (const auto& s : model.rep.sets) all.insert(s.begin(), s.end());
  const std::vector<std::uint32_t> V(all.begin(), all.end());
  const int P = static_cast<int>(V.size());

  PairEnumeration pairs;
  pairs.min_q = options.min_q > 0 ? options.min_q : P + 1;
  const auto prefix = pairs.prefix(P, options.rounds);
  for (int p = 1; p <= P; ++p) {
    if (std::none_of(prefix.begin(), prefix.end(), [p](const auto& pq) { return pq.first == p; })) {
      throw SpdwError(SpdwError::Kind::InsufficientRounds,
                      "InsufficientRounds(" + std::to_string(V[static_cast<std::size_t>(p - 1)]) + "): " +
                          std::to_string(options.rounds) + " rounds never select it; rerun with more rounds");
    }
  }

  FamilyOptions fo;
  fo.functions = P;
  fo.rounds = options.rounds;
  fo.eps = geometric_schedule(options.eps_decay, options.rounds);
  fo.pairs = pairs;
  fo.search = options.search;
  fo.add_singletons = false;
  for (const auto& s : model.rep.sets) {
    std::vector<int> M;
    for (auto v : s) M.push_back(static_cast<int>(std::lower_bound(V.begin(), V.end(), v) - V.begin()) + 1);
    fo.subsets.push_back(std::move(M));
  }
  model.family = build_family(fo);
  model.options.min_q = pairs.min_q;
  complete_model(model);
  return model;
}

OrderIsoReport verify_order_iso(const ModelReport& model, const Rational& threshold, std::uint64_t seed,
                                std::size_t norm_trials) {
  if (threshold < 1) throw SpdwError(SpdwError::Kind::InvalidArgument, "threshold must be at least 1");
  const std::size_t n = model.lattice.size();
  const JoinTable& L = model.lattice;

  OrderIsoReport report;
  report.threshold = threshold;
  report.seed = seed;
  report.norm_trials = norm_trials;

  for (const auto& w : model.weights) {
    report.certification.push_back(certify_glf(w, model.family.search.depth_budget).verdict);
    if (report.certification.back() != Verdict::Certified) report.weights_certified = false;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (model.weights[a] == model.weights[b]) report.weights_distinct = false;
    }
  }

  // Norms are compared on the first few integer points of the common domain.
  const Rational& N = model.family.N(model.family.rounds.size());
  const std::size_t norm_length = N >= 64 ? 64 : static_cast<std::size_t>(Integer(N).get_ui());
  std::vector<LorentzSeq> sampled;
  for (const auto& w : model.weights) sampled.push_back(sample_weights(w, norm_length));
  RandomVectors vectors(seed);

  bool passed = true;
  for (std::size_t e1 = 0; e1 < n; ++e1) {
    for (std::size_t e2 = 0; e2 < n; ++e2) {
      PairResult pr;
      pr.e1 = e1;
      pr.e2 = e2;
      pr.leq = L.leq(e1, e2);

      if (pointwise_leq(model.weights[e1], model.weights[e2])) {
        DominationWitness dw;
        dw.pointwise = true;
        dw.norm_trials = norm_trials;
        for (std::size_t t = 0; t < norm_trials; ++t) {
          const auto a = vectors.next(norm_length);
          if (lorentz_norm(a, sampled[e1]) > lorentz_norm(a, sampled[e2])) dw.norms_ok = false;
        }
        pr.verdict = dw.norms_ok ? PairVerdict::Domination : PairVerdict::Undecided;
        if (!dw.norms_ok) pr.note = "random norm comparison contradicts pointwise domination";
        pr.domination = dw;
      } else {
        const auto& T1 = model.rep.sets[e1];
        const auto& T2 = model.rep.sets[e2];
        auto it = std::find_if(T1.begin(), T1.end(),
                               [&](std::uint32_t v) { return !std::binary_search(T2.begin(), T2.end(), v); });
        if (it == T1.end()) {
          pr.note = "weights not dominated although T(e1) is contained in T(e2)";
        } else {
          IncomparabilityWitness iw;
          iw.v = *it;
          iw.p = static_cast<int>(std::lower_bound(model.V.begin(), model.V.end(), iw.v) - model.V.begin()) + 1;
          try {
            iw.ratios = ratio_report(model.family, model.subsets[e2], iw.p);
            iw.threshold_met = iw.ratios.max_ratio >= threshold;
            if (!iw.ratios.strictly_increasing) report.ratios_increasing = false;
            if (iw.threshold_met && iw.ratios.bounds_ok) {
              pr.verdict = PairVerdict::Incomparable;
            } else if (!iw.threshold_met) {
              pr.note = "ThresholdNotMet(" + L.id(e1) + "," + L.id(e2) + "): max ratio " +
                        to_decimal(iw.ratios.max_ratio, 6) + " below " + to_decimal(threshold, 6) +
                        "; rerun with more rounds";
            } else {
              pr.note = "a qualifying round misses the ratio bound";
            }
          } catch (const GlfError& e) {
            pr.note = e.what();
          }
          pr.incomparability = std::move(iw);
        }
      }
      pr.matches = pr.verdict != PairVerdict::Undecided && (pr.verdict == PairVerdict::Domination) == pr.leq;
      passed = passed && pr.matches;
      report.pairs.push_back(std::move(pr));
    }
  }
  report.passed = passed && report.weights_certified;
  return report;
}

}  // namespace semispread
