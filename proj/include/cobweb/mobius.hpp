#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cobweb/arithmetic.hpp"
#include "cobweb/error.hpp"
#include "cobweb/fibonacci.hpp"
#include "cobweb/incidence.hpp"
#include "cobweb/poset.hpp"

namespace cobweb {

/// Which branch of the level formula determines mu(x, y).
enum class MobiusCase {
  descending,    // x > y as labels
  diagonal,      // x == y
  same_level,    // distinct elements of one level
  adjacent,      // y one level above x
  gapped,        // y at least two levels above x
};

inline std::string_view to_string(MobiusCase c) {
  switch (c) {
    case MobiusCase::descending: return "x > y";
    case MobiusCase::diagonal: return "x = y";
    case MobiusCase::same_level: return "same level, x != y";
    case MobiusCase::adjacent: return "adjacent levels";
    case MobiusCase::gapped: return "level gap >= 2";
  }
  return "?";
}

inline MobiusCase mobius_case(Label x, Label y) {
  if (x > y) return MobiusCase::descending;
  if (x == y) return MobiusCase::diagonal;
  const Level k = level_of(x);
  const Level n = level_of(y);
  if (k == n) return MobiusCase::same_level;
  if (n == k + 1) return MobiusCase::adjacent;
  return MobiusCase::gapped;
}

/// Product of (F(l) - 1) for l in [from, to).
inline Integer fib_minus_one_product(Level from, Level to, OpCounter* counter = nullptr) {
  Integer product = 1;
  for (Level l = from; l < to; ++l) {
    product *= fib(l) - 1;
    count_mul(counter);
  }
  return product;
}

/// mu over natural labels, by the five-case level formula. For x on level k
/// and y on level n > k + 1 the value is (-1)^(n-k) prod_{l=k+1}^{n-1} (F(l) - 1).
inline Integer mobius_levels(Label x, Label y) {
  const MobiusCase c = mobius_case(x, y);
  switch (c) {
    case MobiusCase::descending:
    case MobiusCase::same_level:
      return 0;
    case MobiusCase::diagonal:
      return 1;
    case MobiusCase::adjacent:
      return -1;
    case MobiusCase::gapped:
      break;
  }
  const Level k = level_of(x);
  const Level n = level_of(y);
  Integer value = fib_minus_one_product(k + 1, n);
  if ((n - k) % 2 == 1) value = -value;
  return value;
}

/// mu(<s,t>, <u,v>) = delta(t,v) delta(s,u) - delta(t+1,v)
///                    + sum_{k>=2} delta(t+k,v) (-1)^k prod_{i=t+1}^{v-1} (F(i) - 1).
/// Rows matter only through the diagonal term.
inline Integer mobius_coords(const Vertex& x, const Vertex& y, OpCounter* counter = nullptr) {
  validate(x);
  validate(y);
  const Level t = x.level;
  const Level v = y.level;
  Integer value = 0;
  if (t == v && x.row == y.row) value += 1;
  if (t + 1 == v) value -= 1;
  if (v >= t + 2) {
    // Only the k = v - t term of the sum survives.
    Integer term = fib_minus_one_product(t + 1, v, counter);
    if ((v - t) % 2 == 1) term = -term;
    value += term;
  }
  return value;
}

/// mu(x, y) by the defining recurrence mu(x,x) = 1,
/// mu(x,y) = -sum_{x <= z < y} mu(x,z), memoized over the pairs (x, z) of
/// this call only. Zero unless x <= y.
inline Integer mobius_recurrence(const TruncatedPoset& poset, const Vertex& x, const Vertex& y,
                                 OpCounter* counter = nullptr) {
  const Label a = poset.label(x);
  const Label b = poset.label(y);
  if (!poset.le(a, b)) return 0;
  const std::vector<Label> chain = poset.interval(a, b);
  // memo[i] = mu(x, chain[i]); chain is a linear extension of [x, y].
  std::vector<Integer> memo(chain.size());
  std::vector<Level> levels(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) levels[i] = level_of(chain[i]);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i == 0) {
      memo[i] = 1;
      continue;
    }
    Integer sum = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (levels[j] >= levels[i]) continue;  // z must lie strictly below chain[i]
      sum += memo[j];
      count_mul(counter);
    }
    memo[i] = -sum;
  }
  return memo.back();
}

enum class MobiusStrategy { explicit_formula, recurrence, matrix_inverse };

inline constexpr MobiusStrategy kAllStrategies[] = {
    MobiusStrategy::explicit_formula, MobiusStrategy::recurrence, MobiusStrategy::matrix_inverse};

inline std::string_view to_string(MobiusStrategy s) {
  switch (s) {
    case MobiusStrategy::explicit_formula: return "explicit";
    case MobiusStrategy::recurrence: return "recurrence";
    case MobiusStrategy::matrix_inverse: return "matrix_inverse";
  }
  return "?";
}

inline MobiusStrategy parse_strategy(std::string_view name) {
  for (MobiusStrategy s : kAllStrategies)
    if (to_string(s) == name) return s;
  throw domain_error("unknown Mobius strategy '" + std::string(name) +
                     "' (expected explicit, recurrence or matrix_inverse)");
}

namespace detail {

inline IntegerIncidence mobius_by_formula(const TruncatedPoset& poset, OpCounter* counter) {
  IntegerIncidence mu(poset);
  for (Label a = 1; a <= poset.size(); ++a) {
    const Vertex x = coords_of(a);
    mu.set(a, a, mobius_coords(x, x, counter));
    for (Label b = first_label(x.level + 1); b <= poset.size(); ++b) {
      Integer v = mobius_coords(x, coords_of(b), counter);
      if (v != 0) mu.set(a, b, v);
    }
  }
  return mu;
}

inline IntegerIncidence mobius_by_recurrence(const TruncatedPoset& poset, OpCounter* counter) {
  const std::size_t n = poset.size();
  IntegerIncidence mu(poset);
  std::vector<Integer> memo(n + 1);  // memo[z] = mu(a, z) for the current row a
  for (Label a = 1; a <= n; ++a) {
    const Level t = level_of(a);
    memo[a] = 1;
    mu.set(a, a, memo[a]);
    for (Label b = first_label(t + 1); b <= n; ++b) {
      Integer sum = 0;
      for (Label z : poset.interval(a, b)) {
        if (z == b) break;
        sum += memo[z];
        count_mul(counter);
      }
      memo[b] = -sum;
      if (memo[b] != 0) mu.set(a, b, memo[b]);
    }
  }
  return mu;
}

// Inverts the 0/1 order matrix as a plain unitriangular matrix: no use of
// the poset beyond filling in the matrix.
inline IntegerIncidence mobius_by_matrix_inverse(const TruncatedPoset& poset, OpCounter* counter) {
  const std::size_t n = poset.size();
  UpperTriangular<Integer> zeta(n);
  for (Label a = 1; a <= n; ++a)
    for (Label b = a; b <= n; ++b) zeta.at(a, b) = poset.le(a, b) ? 1 : 0;

  UpperTriangular<Integer> inverse(n);
  for (Label a = 1; a <= n; ++a) {
    inverse.at(a, a) = 1;
    for (Label b = a + 1; b <= n; ++b) {
      Integer sum = 0;
      for (Label k = a; k < b; ++k) sum += inverse.at(a, k) * zeta.at(k, b);
      count_mul(counter, b - a);
      inverse.at(a, b) = -sum;
    }
  }
  return IntegerIncidence(poset, inverse);
}

}  // namespace detail

/// The full Mobius matrix of a truncation. All strategies return the same
/// matrix; they differ in cost.
inline IntegerIncidence mobius_matrix(const TruncatedPoset& poset, MobiusStrategy strategy,
                                      OpCounter* counter = nullptr) {
  switch (strategy) {
    case MobiusStrategy::explicit_formula: return detail::mobius_by_formula(poset, counter);
    case MobiusStrategy::recurrence: return detail::mobius_by_recurrence(poset, counter);
    case MobiusStrategy::matrix_inverse: return detail::mobius_by_matrix_inverse(poset, counter);
  }
  throw domain_error("unknown Mobius strategy");
}

inline IntegerIncidence mobius_matrix(const TruncatedPoset& poset, std::string_view strategy,
                                      OpCounter* counter = nullptr) {
  return mobius_matrix(poset, parse_strategy(strategy), counter);
}

}  // namespace cobweb
