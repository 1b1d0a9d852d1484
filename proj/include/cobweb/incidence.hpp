#pragma once

// Incidence algebra of a truncated cobweb poset.
//
// An incidence function f assigns a value to every pair x <= y and is zero
// elsewhere. With labels taken in natural order the matrix of f is upper
// triangular, so storage is either a packed upper triangle (small posets) or
// one ordered map per row (large or sparse functions).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cobweb/arithmetic.hpp"
#include "cobweb/error.hpp"
#include "cobweb/fibonacci.hpp"
#include "cobweb/poset.hpp"

namespace cobweb {

/// Dense upper-triangular matrix over labels 1..n, packed row by row.
/// Entries below the diagonal are implicitly zero.
template <class Ring>
class UpperTriangular {
 public:
  explicit UpperTriangular(std::size_t n = 0) : n_(n), cells_(n * (n + 1) / 2) {}

  std::size_t dimension() const noexcept { return n_; }

  const Ring& at(Label a, Label b) const { return cells_[index(a, b)]; }
  Ring& at(Label a, Label b) { return cells_[index(a, b)]; }

  Ring get(Label a, Label b) const {
    if (a > b) return Ring(0);
    return cells_[index(a, b)];
  }

  friend bool operator==(const UpperTriangular&, const UpperTriangular&) = default;

 private:
  std::size_t index(Label a, Label b) const {
    if (a == 0 || b > n_ || a > b)
      throw domain_error("entry (" + std::to_string(a) + "," + std::to_string(b) +
                         ") is outside the upper triangle");
    const std::size_t r = a - 1;
    return r * n_ - r * (r - 1) / 2 + (b - a);
  }

  std::size_t n_;
  std::vector<Ring> cells_;
};

enum class Storage { automatic, dense, sparse };

/// Truncations with at most this many elements (levels 1..12) default to
/// dense storage.
inline constexpr std::size_t kDenseStorageLimit = 376;

template <class Ring>
class BasicIncidence {
 public:
  using value_type = Ring;

  explicit BasicIncidence(TruncatedPoset poset, Storage storage = Storage::automatic)
      : poset_(poset) {
    if (storage == Storage::automatic)
      storage = poset_.size() <= kDenseStorageLimit ? Storage::dense : Storage::sparse;
    if (storage == Storage::dense)
      cells_.template emplace<Dense>(poset_.size());
    else
      cells_.template emplace<Sparse>(poset_.size() + 1);
  }

  /// Wraps a label-order matrix; throws if it is nonzero on an incomparable
  /// pair.
  BasicIncidence(TruncatedPoset poset, const UpperTriangular<Ring>& matrix,
                 Storage storage = Storage::automatic)
      : BasicIncidence(poset, storage) {
    if (matrix.dimension() != poset_.size())
      throw domain_error("matrix dimension does not match the truncation");
    for (Label a = 1; a <= poset_.size(); ++a)
      for (Label b = a; b <= poset_.size(); ++b)
        if (const Ring& v = matrix.at(a, b); v != 0) set(a, b, v);
  }

  const TruncatedPoset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }
  bool is_dense() const noexcept { return std::holds_alternative<Dense>(cells_); }

  /// Value at (a, b); zero whenever a is not below b.
  Ring at(Label a, Label b) const {
    if (!poset_.le(a, b)) return Ring(0);
    if (const auto* d = std::get_if<Dense>(&cells_)) return d->at(a, b);
    const auto& row = std::get<Sparse>(cells_)[a];
    const auto it = row.find(b);
    return it == row.end() ? Ring(0) : it->second;
  }

  Ring at(const Vertex& x, const Vertex& y) const { return at(poset_.label(x), poset_.label(y)); }

  void set(Label a, Label b, const Ring& value) {
    if (!poset_.le(a, b)) {
      if (value == 0) return;
      throw domain_error("incidence functions vanish off the order relation: (" +
                         to_string(coords_of(a)) + ", " + to_string(coords_of(b)) + ")");
    }
    Ring v = value;
    normalize(v);
    if (auto* d = std::get_if<Dense>(&cells_)) {
      d->at(a, b) = std::move(v);
      return;
    }
    auto& row = std::get<Sparse>(cells_)[a];
    if (v == 0)
      row.erase(b);
    else
      row.insert_or_assign(b, std::move(v));
  }

  void set(const Vertex& x, const Vertex& y, const Ring& value) {
    set(poset_.label(x), poset_.label(y), value);
  }

  void add(Label a, Label b, const Ring& value) {
    if (value == 0) return;
    if (auto* d = std::get_if<Dense>(&cells_)) {
      if (!poset_.le(a, b)) set(a, b, value);  // throws
      d->at(a, b) += value;
      normalize(d->at(a, b));
      return;
    }
    set(a, b, at(a, b) + value);
  }

  /// Calls fn(b, value) for every nonzero entry of row a, in label order.
  template <class Fn>
  void for_each_in_row(Label a, Fn&& fn) const {
    if (const auto* d = std::get_if<Dense>(&cells_)) {
      const Ring& diag = d->at(a, a);
      if (diag != 0) fn(a, diag);
      const Label start = first_label(level_of(a) + 1);
      for (Label b = start; b <= size(); ++b)
        if (const Ring& v = d->at(a, b); v != 0) fn(b, v);
      return;
    }
    for (const auto& [b, v] : std::get<Sparse>(cells_)[a]) fn(b, v);
  }

  /// Calls fn(a, b, value) for every nonzero entry in row-major label order.
  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (Label a = 1; a <= size(); ++a)
      for_each_in_row(a, [&](Label b, const Ring& v) { fn(a, b, v); });
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for_each_nonzero([&](Label, Label, const Ring&) { ++n; });
    return n;
  }

  /// Label-order matrix view.
  UpperTriangular<Ring> matrix() const {
    UpperTriangular<Ring> m(size());
    for_each_nonzero([&](Label a, Label b, const Ring& v) { m.at(a, b) = v; });
    return m;
  }

  /// Entrywise equality over the same truncation, independent of storage.
  friend bool operator==(const BasicIncidence& f, const BasicIncidence& g) {
    if (!(f.poset_ == g.poset_)) return false;
    for (Label a = 1; a <= f.size(); ++a) {
      bool equal = true;
      f.for_each_in_row(a, [&](Label b, const Ring& v) { equal = equal && g.at(a, b) == v; });
      g.for_each_in_row(a, [&](Label b, const Ring& v) { equal = equal && f.at(a, b) == v; });
      if (!equal) return false;
    }
    return true;
  }

  BasicIncidence& operator+=(const BasicIncidence& g) {
    require_same_poset(g);
    g.for_each_nonzero([&](Label a, Label b, const Ring& v) { add(a, b, v); });
    return *this;
  }

  BasicIncidence& operator-=(const BasicIncidence& g) {
    require_same_poset(g);
    g.for_each_nonzero([&](Label a, Label b, const Ring& v) { add(a, b, -v); });
    return *this;
  }

  BasicIncidence& operator*=(const Ring& scalar) {
    BasicIncidence out(poset_, is_dense() ? Storage::dense : Storage::sparse);
    for_each_nonzero([&](Label a, Label b, const Ring& v) { out.set(a, b, v * scalar); });
    *this = std::move(out);
    return *this;
  }

  friend BasicIncidence operator+(BasicIncidence f, const BasicIncidence& g) { return f += g; }
  friend BasicIncidence operator-(BasicIncidence f, const BasicIncidence& g) { return f -= g; }
  friend BasicIncidence operator*(const Ring& s, BasicIncidence f) { return f *= s; }
  friend BasicIncidence operator-(BasicIncidence f) { return f *= Ring(-1); }

  void require_same_poset(const BasicIncidence& g) const {
    if (!(poset_ == g.poset_))
      throw domain_error("incidence functions live on different truncations (levels " +
                         std::to_string(poset_.max_level()) + " and " +
                         std::to_string(g.poset_.max_level()) + ")");
  }

 private:
  using Dense = UpperTriangular<Ring>;
  using Sparse = std::vector<std::map<Label, Ring>>;  // indexed by row label

  TruncatedPoset poset_;
  std::variant<Dense, Sparse> cells_;
};

using IntegerIncidence = BasicIncidence<Integer>;
using IncidenceFunction = BasicIncidence<Rational>;

template <class To, class From>
BasicIncidence<To> convert(const BasicIncidence<From>& f) {
  BasicIncidence<To> out(f.poset(), f.is_dense() ? Storage::dense : Storage::sparse);
  f.for_each_nonzero([&](Label a, Label b, const From& v) { out.set(a, b, To(v)); });
  return out;
}

inline IncidenceFunction to_rational(const IntegerIncidence& f) { return convert<Rational>(f); }

// ---------------------------------------------------------------------------
// Level profiles
// ---------------------------------------------------------------------------

/// Compressed form of a level-homogeneous incidence function: one value per
/// level on the diagonal and one per pair of levels t < v.
template <class Ring>
struct LevelProfile {
  Level levels = 0;
  std::vector<Ring> diagonal;  // [t], 1-based
  std::vector<Ring> cross;     // [t * (levels + 1) + v]

  explicit LevelProfile(Level n = 0)
      : levels(n), diagonal(n + 1), cross(static_cast<std::size_t>(n + 1) * (n + 1)) {}

  Ring& between(Level t, Level v) { return cross[static_cast<std::size_t>(t) * (levels + 1) + v]; }
  const Ring& between(Level t, Level v) const {
    return cross[static_cast<std::size_t>(t) * (levels + 1) + v];
  }
};

/// The level profile of f, or nothing if some diagonal block or some block
/// between two levels is not constant.
template <class Ring>
std::optional<LevelProfile<Ring>> level_profile(const BasicIncidence<Ring>& f) {
  const Level n = f.poset().max_level();
  LevelProfile<Ring> profile(n);
  const std::size_t blocks = static_cast<std::size_t>(n + 1) * (n + 1);
  std::vector<std::uint64_t> seen(blocks, 0);
  std::vector<std::uint64_t> diag_seen(n + 1, 0);
  bool homogeneous = true;

  f.for_each_nonzero([&](Label a, Label b, const Ring& v) {
    if (!homogeneous) return;
    const Level t = level_of(a);
    const Level s = level_of(b);
    Ring& slot = a == b ? profile.diagonal[t] : profile.between(t, s);
    std::uint64_t& count = a == b ? diag_seen[t] : seen[static_cast<std::size_t>(t) * (n + 1) + s];
    if (count == 0)
      slot = v;
    else if (slot != v)
      homogeneous = false;
    ++count;
  });
  if (!homogeneous) return std::nullopt;

  for (Level t = 1; t <= n; ++t) {
    if (diag_seen[t] != 0 && diag_seen[t] != level_size(t)) return std::nullopt;
    for (Level v = t + 1; v <= n; ++v) {
      const auto count = seen[static_cast<std::size_t>(t) * (n + 1) + v];
      if (count != 0 && count != level_size(t) * level_size(v)) return std::nullopt;
    }
  }
  return profile;
}

template <class Ring>
BasicIncidence<Ring> from_profile(const TruncatedPoset& poset, const LevelProfile<Ring>& profile,
                                  Storage storage = Storage::automatic) {
  BasicIncidence<Ring> out(poset, storage);
  const Level n = poset.max_level();
  for (Level t = 1; t <= n; ++t) {
    for (Label a = first_label(t); a <= last_label(t); ++a) {
      out.set(a, a, profile.diagonal[t]);
      for (Level v = t + 1; v <= n; ++v) {
        const Ring& value = profile.between(t, v);
        if (value == 0) continue;
        for (Label b = first_label(v); b <= last_label(v); ++b) out.set(a, b, value);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distinguished elements
// ---------------------------------------------------------------------------

template <class Ring = Integer>
BasicIncidence<Ring> delta(const TruncatedPoset& poset, Storage storage = Storage::automatic) {
  BasicIncidence<Ring> out(poset, storage);
  for (Label a = 1; a <= poset.size(); ++a) out.set(a, a, Ring(1));
  return out;
}

/// zeta(<s,t>, <u,v>) = delta(s,u) delta(t,v) + sum_{k>=1} delta(t+k, v), with
/// the sum cut at the top level of the truncation.
inline Integer zeta_coord_value(const Vertex& x, const Vertex& y, Level top) {
  validate(x);
  validate(y);
  Integer value = (x.row == y.row && x.level == y.level) ? 1 : 0;
  for (Level k = 1; x.level + k <= top; ++k)
    if (x.level + k == y.level) value += 1;
  return value;
}

template <class Ring = Integer>
BasicIncidence<Ring> zeta_coord(const TruncatedPoset& poset, Storage storage = Storage::automatic) {
  BasicIncidence<Ring> out(poset, storage);
  const Level top = poset.max_level();
  for (Label a = 1; a <= poset.size(); ++a) {
    const Vertex x = coords_of(a);
    for (Label b = a; b <= poset.size(); ++b) {
      const Integer v = zeta_coord_value(x, coords_of(b), top);
      if (v != 0) out.set(a, b, Ring(v));
    }
  }
  return out;
}

/// zeta_1(x, y) = sum_{k>=0} delta(x+k, y), summed for x + k up to `last`.
inline Integer zeta_one_value(Label x, Label y, Label last) {
  Integer value = 0;
  for (Label k = 0; x + k <= last; ++k)
    if (x + k == y) value += 1;
  return value;
}

/// zeta_0(x, y) = sum_{k>=0} sum_{s>=0} delta(x, F(s+1)+k)
///                  * sum_{r=1}^{F(s)-k-1} delta(k+F(s+1)+r, y),
/// with every index bounded so that labels stay at most `last`.
inline Integer zeta_zero_value(Label x, Label y, Label last) {
  Integer value = 0;
  for (std::size_t s = 0; fib_word(s + 1) <= last; ++s) {
    const Label base = fib_word(s + 1);
    for (Label k = 0; base + k <= last; ++k) {
      if (x != base + k) continue;  // outer delta vanishes
      const auto span = static_cast<std::int64_t>(fib_word(s)) - static_cast<std::int64_t>(k) - 1;
      for (std::int64_t r = 1; r <= span; ++r)
        if (k + base + static_cast<Label>(r) == y) value += 1;
    }
  }
  return value;
}

/// zeta_1 and zeta_0 as label-order matrices, built by adding each nonzero
/// term of their delta sums into the single entry it hits.
inline std::pair<UpperTriangular<Integer>, UpperTriangular<Integer>> zeta_natural_parts(
    const TruncatedPoset& poset) {
  const Label last = poset.size();
  UpperTriangular<Integer> one(last);
  UpperTriangular<Integer> zero(last);
  for (Label x = 1; x <= last; ++x)
    for (Label k = 0; x + k <= last; ++k) one.at(x, x + k) += 1;
  for (std::size_t s = 0; fib_word(s + 1) <= last; ++s) {
    const Label base = fib_word(s + 1);
    for (Label k = 0; base + k <= last; ++k) {
      const auto span = static_cast<std::int64_t>(fib_word(s)) - static_cast<std::int64_t>(k) - 1;
      for (std::int64_t r = 1; r <= span; ++r) {
        const Label y = k + base + static_cast<Label>(r);
        if (y <= last) zero.at(base + k, y) += 1;
      }
    }
  }
  return {std::move(one), std::move(zero)};
}

/// zeta = zeta_1 - zeta_0 over natural labels. Throws domain_error if the
/// difference is nonzero on an incomparable pair.
template <class Ring = Integer>
BasicIncidence<Ring> zeta_natural(const TruncatedPoset& poset, Storage storage = Storage::automatic) {
  auto [one, zero] = zeta_natural_parts(poset);
  UpperTriangular<Ring> diff(poset.size());
  for (Label a = 1; a <= poset.size(); ++a)
    for (Label b = a; b <= poset.size(); ++b) diff.at(a, b) = Ring(one.at(a, b) - zero.at(a, b));
  return BasicIncidence<Ring>(poset, diff, storage);
}

// ---------------------------------------------------------------------------
// Convolution and inversion
// ---------------------------------------------------------------------------

/// Product of two level profiles: endpoints plus every full level strictly
/// between them.
template <class Ring>
LevelProfile<Ring> convolve(const LevelProfile<Ring>& f, const LevelProfile<Ring>& g,
                            OpCounter* counter = nullptr) {
  const Level n = f.levels;
  LevelProfile<Ring> h(n);
  for (Level t = 1; t <= n; ++t) {
    h.diagonal[t] = f.diagonal[t] * g.diagonal[t];
    count_mul(counter);
    for (Level v = t + 1; v <= n; ++v) {
      Ring sum = f.diagonal[t] * g.between(t, v) + f.between(t, v) * g.diagonal[v];
      count_mul(counter, 2);
      for (Level l = t + 1; l < v; ++l) {
        const Ring& left = f.between(t, l);
        const Ring& right = g.between(l, v);
        if (left == 0 || right == 0) continue;
        sum += Ring(fib(l)) * left * right;
        count_mul(counter, 2);
      }
      h.between(t, v) = std::move(sum);
    }
  }
  return h;
}

/// Generic product: h(x,y) = sum over x <= z <= y of f(x,z) g(z,y), driven by
/// the nonzero entries of f and g.
template <class Ring>
BasicIncidence<Ring> convolve_generic(const BasicIncidence<Ring>& f, const BasicIncidence<Ring>& g,
                                      OpCounter* counter = nullptr) {
  f.require_same_poset(g);
  BasicIncidence<Ring> h(f.poset(), f.is_dense() ? Storage::dense : Storage::sparse);
  if (h.is_dense()) {
    UpperTriangular<Ring> acc(f.size());
    for (Label a = 1; a <= f.size(); ++a)
      f.for_each_in_row(a, [&](Label z, const Ring& fv) {
        g.for_each_in_row(z, [&](Label b, const Ring& gv) {
          acc.at(a, b) += fv * gv;
          count_mul(counter);
        });
      });
    return BasicIncidence<Ring>(f.poset(), acc, Storage::dense);
  }
  for (Label a = 1; a <= f.size(); ++a) {
    std::map<Label, Ring> row;
    f.for_each_in_row(a, [&](Label z, const Ring& fv) {
      g.for_each_in_row(z, [&](Label b, const Ring& gv) {
        row[b] += fv * gv;
        count_mul(counter);
      });
    });
    for (const auto& [b, v] : row) h.set(a, b, v);
  }
  return h;
}

/// f * g. Level-homogeneous operands (zeta, delta, eta, mu and their
/// combinations) are multiplied through their level profiles.
template <class Ring>
BasicIncidence<Ring> convolve(const BasicIncidence<Ring>& f, const BasicIncidence<Ring>& g,
                              OpCounter* counter = nullptr) {
  f.require_same_poset(g);
  if (auto pf = level_profile(f)) {
    if (auto pg = level_profile(g)) {
      return from_profile(f.poset(), convolve(*pf, *pg, counter),
                          f.is_dense() ? Storage::dense : Storage::sparse);
    }
  }
  return convolve_generic(f, g, counter);
}

namespace detail {

// 1/d in the value ring; over the integers only +-1 qualify.
template <class Ring>
Ring ring_inverse(const Ring& d, Label where) {
  if (d == 0)
    throw singular_error("zero diagonal entry at vertex " + to_string(coords_of(where)));
  if constexpr (std::is_same_v<Ring, Integer>) {
    if (d != 1 && d != -1)
      throw singular_error("diagonal entry " + to_string(d) + " at vertex " +
                           to_string(coords_of(where)) + " is not a unit over the integers");
    return d;
  } else {
    return Ring(1) / d;
  }
}

}  // namespace detail

/// Convolution inverse by back-substitution along each row:
///   f^-1(x,x) = 1/f(x,x),
///   f^-1(x,y) = -(1/f(y,y)) sum_{x <= z < y} f^-1(x,z) f(z,y).
template <class Ring>
BasicIncidence<Ring> invert(const BasicIncidence<Ring>& f, OpCounter* counter = nullptr) {
  const TruncatedPoset& poset = f.poset();
  const std::size_t n = poset.size();
  std::vector<Ring> inv_diag(n + 1);
  for (Label a = 1; a <= n; ++a) inv_diag[a] = detail::ring_inverse(f.at(a, a), a);

  BasicIncidence<Ring> out(poset, f.is_dense() ? Storage::dense : Storage::sparse);
  std::vector<Ring> row(n + 1);
  for (Label a = 1; a <= n; ++a) {
    const Level t = level_of(a);
    row[a] = inv_diag[a];
    out.set(a, a, row[a]);
    for (Level v = t + 1; v <= poset.max_level(); ++v) {
      for (Label b = first_label(v); b <= last_label(v); ++b) {
        Ring sum = row[a] * f.at(a, b);
        count_mul(counter);
        for (Label z = first_label(t + 1); z < first_label(v); ++z) {
          if (row[z] == 0) continue;
          sum += row[z] * f.at(z, b);
          count_mul(counter);
        }
        Ring value = -sum * inv_diag[b];
        row[b] = value;
        if (value != 0) out.set(a, b, value);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

/// eta = zeta - delta.
template <class Ring = Integer>
BasicIncidence<Ring> eta(const TruncatedPoset& poset, Storage storage = Storage::automatic) {
  return zeta_coord<Ring>(poset, storage) - delta<Ring>(poset, storage);
}

/// eta^k; entry (x,y) counts strict chains x = z0 < z1 < ... < zk = y.
template <class Ring = Integer>
BasicIncidence<Ring> eta_power(const TruncatedPoset& poset, std::uint64_t k,
                               OpCounter* counter = nullptr) {
  BasicIncidence<Ring> result = delta<Ring>(poset);
  const BasicIncidence<Ring> step = eta<Ring>(poset);
  for (std::uint64_t i = 0; i < k; ++i) {
    result = convolve(result, step, counter);
    if (result.nonzero_count() == 0) break;  // every higher power is zero too
  }
  return result;
}

/// Number of saturated chains from x to y (0 unless x <= y). Evaluated both
/// as eta^(v-t)(x,y) and as the product of F(l) over the levels strictly
/// between; the two must agree.
inline Integer count_maximal_chains(const TruncatedPoset& poset, const Vertex& x, const Vertex& y) {
  if (!poset.le(x, y)) return 0;
  if (x == y) return 1;
  const Level gap = y.level - x.level;

  Integer product = 1;
  for (Level l = x.level + 1; l < y.level; ++l) product *= fib(l);

  const TruncatedPoset window(y.level, Limits{poset.size()});
  const Integer via_eta = eta_power(window, gap).at(x, y);
  if (via_eta != product)
    throw std::logic_error("saturated chain count mismatch between " + to_string(x) + " and " +
                           to_string(y));
  return product;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// CSV matrix in natural-label order: a header of labels, then one row per
/// label with every entry rendered as "p" or "p/q".
template <class Ring>
std::string to_csv(const BasicIncidence<Ring>& f) {
  std::ostringstream out;
  const std::size_t n = f.size();
  out << "label";
  for (Label b = 1; b <= n; ++b) out << ',' << b;
  out << '\n';
  for (Label a = 1; a <= n; ++a) {
    out << a;
    for (Label b = 1; b <= n; ++b) out << ',' << to_string(f.at(a, b));
    out << '\n';
  }
  return out.str();
}

}  // namespace cobweb
