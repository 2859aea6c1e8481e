#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semispread/glf.hpp"
#include "semispread/semilattice.hpp"

namespace testing {

using semispread::Rational;

inline std::string data_file(const std::string& name) { return std::string(SEMISPREAD_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline semispread::JoinTable load(const std::string& name) {
  return semispread::validate_join_semilattice(semispread::parse_lattice_spec(slurp(data_file(name))));
}

/// Weight from (end, value) pairs after the implicit 1 on (0, 2].
inline semispread::PiecewiseWeight weight(const std::vector<std::pair<Rational, Rational>>& tail) {
  std::vector<Rational> b{Rational(0), Rational(2)};
  std::vector<Rational> v{Rational(1)};
  for (const auto& [e, x] : tail) {
    b.push_back(e);
    v.push_back(x);
  }
  return semispread::PiecewiseWeight(std::move(b), std::move(v));
}

/// Integral of w over (0, x] by walking every segment; independent of the
/// cached prefix sums.
inline Rational integral_oracle(const semispread::PiecewiseWeight& w, const Rational& x) {
  Rational sum(0);
  const auto& b = w.breakpoints();
  const auto& v = w.values();
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (x <= b[j]) break;
    const Rational hi = x < b[j + 1] ? x : b[j + 1];
    sum += v[j] * (hi - b[j]);
  }
  return sum;
}

/// Least upper bound by scanning all elements.
inline std::size_t join_oracle(const semispread::JoinTable& t, std::size_t a, std::size_t b) {
  for (std::size_t l = 0; l < t.size(); ++l) {
    if (!t.leq(a, l) || !t.leq(b, l)) continue;
    bool least = true;
    for (std::size_t u = 0; u < t.size(); ++u) {
      if (t.leq(a, u) && t.leq(b, u) && !t.leq(l, u)) least = false;
    }
    if (least) return l;
  }
  return t.size();
}

/// Random rational in [lo, hi] with denominator `den`.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long den = 997) {
  const Rational span = (hi - lo) * den;
  const mpz_class top = mpz_class(span);  // floor for positive spans
  if (top <= 0) return lo;
  const unsigned long k = rng() % (top.get_ui() + 1);
  return lo + semispread::fraction(static_cast<long>(k), den);
}

}  // namespace testing
