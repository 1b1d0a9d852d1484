#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "cobweb/error.hpp"

namespace cobweb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Counts scalar multiply(-accumulate) steps performed by an algorithm.
/// Deterministic, so it can be compared across strategies instead of wall
/// time.
struct OpCounter {
  std::uint64_t multiplications = 0;
};

inline void count_mul(OpCounter* counter, std::uint64_t n = 1) {
  if (counter != nullptr) counter->multiplications += n;
}

/// Renders as "p" or "p/q" in lowest terms.
inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
  Rational c(v);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p", "-p" or "p/q" (q nonzero). Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
      s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw domain_error("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  const Integer q{std::string(den)};
  if (q == 0) throw domain_error("zero denominator in '" + std::string(text) + "'");
  Rational r{Integer{n}, q};
  r.canonicalize();
  return r;
}

/// Brings a value to canonical form; rationals built from an unreduced
/// numerator/denominator pair compare incorrectly until canonicalized.
inline void normalize(Integer&) noexcept {}
inline void normalize(Rational& v) { v.canonicalize(); }

inline bool is_integral(const Rational& v) {
  Rational c(v);
  c.canonicalize();
  return c.get_den() == 1;
}

/// Number of bits of the magnitude (0 for zero).
inline std::size_t bit_size(const Integer& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::size_t bit_size(const Rational& v) {
  return bit_size(Integer(v.get_num())) + bit_size(Integer(v.get_den()));
}

}  // namespace cobweb
