#include "semispread/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace semispread {

namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int digits) {
  if (q == 0) return "0";
  mpf_class f(q, 64 + 4 * static_cast<unsigned>(digits));
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^exp
  const long e10 = static_cast<long>(exp) - 1;
  if (e10 >= -4 && e10 < 15) {
    std::string out;
    if (exp <= 0) {
      out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
    } else if (static_cast<std::size_t>(exp) >= mant.size()) {
      out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
    } else {
      out = mant.substr(0, static_cast<std::size_t>(exp)) + "." + mant.substr(static_cast<std::size_t>(exp));
    }
    return sign + out;
  }
  std::string out = mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%+ld", e10);
  return sign + out + buf;
}

long approx_log2(const Rational& q) {
  const long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  const long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  return num_bits - den_bits;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

}  // namespace semispread
