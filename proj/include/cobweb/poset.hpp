#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cobweb/error.hpp"
#include "cobweb/fibonacci.hpp"

namespace cobweb {

/// A vertex <row, level> of the cobweb poset: the row-th element (from the
/// left) of level `level`. Valid when 1 <= row <= F(level).
struct Vertex {
  std::uint64_t row = 1;
  Level level = 1;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  // Level-major, then row: the natural-label order.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    return a.row <=> b.row;
  }
};

inline std::string to_string(const Vertex& v) {
  return "<" + std::to_string(v.row) + "," + std::to_string(v.level) + ">";
}

inline std::ostream& operator<<(std::ostream& os, const Vertex& v) {
  return os << to_string(v);
}

inline bool is_valid(const Vertex& v) noexcept {
  return v.level >= 1 && v.level <= kMaxLevel && v.row >= 1 && v.row <= level_size(v.level);
}

inline void validate(const Vertex& v) {
  if (!is_valid(v)) throw domain_error("invalid vertex " + to_string(v));
}

inline Vertex coords_of(Label x) {
  const Level k = level_of(x);
  return Vertex{x - first_label(k) + 1, k};
}

inline Label label_of(const Vertex& v) {
  validate(v);
  return first_label(v.level) + v.row - 1;
}

/// x <= y iff x sits on a strictly lower level, or x == y.
inline bool le(const Vertex& x, const Vertex& y) {
  validate(x);
  validate(y);
  return x.level < y.level || x == y;
}

/// Phi_s: the vertices of level s in row order.
inline std::vector<Vertex> level_set(Level s) {
  if (s == 0) throw domain_error("levels start at 1");
  if (s > kMaxLevel) throw domain_error("level " + std::to_string(s) + " is too large");
  std::vector<Vertex> out;
  out.reserve(level_size(s));
  for (std::uint64_t j = 1; j <= level_size(s); ++j) out.push_back(Vertex{j, s});
  return out;
}

/// Safety limit on the number of elements a truncation may contain.
struct Limits {
  static constexpr std::size_t kDefaultMaxElements = 20000;
  std::size_t max_elements = kDefaultMaxElements;
};

/// Number of elements in levels 1..N, F(N+2) - 1.
inline std::uint64_t element_count(Level max_level) { return last_label(max_level); }

inline void check_guard(Level max_level, const Limits& limits) {
  if (max_level > kMaxLevel || element_count(max_level) > limits.max_elements)
    throw size_limit_error("truncation at level " + std::to_string(max_level) +
                               " is too large",
                           limits.max_elements);
}

/// Levels 1..N of the cobweb poset, linearly ordered by natural label.
/// Immutable; copies are cheap.
class TruncatedPoset {
 public:
  explicit TruncatedPoset(Level max_level, const Limits& limits = {}) : max_level_(max_level) {
    if (max_level == 0) throw domain_error("a truncation needs at least one level");
    check_guard(max_level, limits);
  }

  Level max_level() const noexcept { return max_level_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(element_count(max_level_)); }

  bool contains(Label x) const noexcept { return x >= 1 && x <= size(); }
  bool contains(const Vertex& v) const noexcept { return is_valid(v) && v.level <= max_level_; }

  Label label(const Vertex& v) const {
    require(v);
    return label_of(v);
  }

  Vertex vertex(Label x) const {
    require(x);
    return coords_of(x);
  }

  bool le(Label x, Label y) const {
    require(x);
    require(y);
    return x == y || level_of(x) < level_of(y);
  }

  bool le(const Vertex& x, const Vertex& y) const {
    require(x);
    require(y);
    return cobweb::le(x, y);
  }

  /// All z with x <= z <= y in label order; empty unless x <= y.
  std::vector<Label> interval(Label x, Label y) const {
    require(x);
    require(y);
    std::vector<Label> out;
    if (x == y) {
      out.push_back(x);
      return out;
    }
    const Level t = level_of(x);
    const Level v = level_of(y);
    if (t >= v) return out;
    out.push_back(x);
    for (Label z = first_label(t + 1); z < first_label(v); ++z) out.push_back(z);
    out.push_back(y);
    return out;
  }

  std::vector<Vertex> interval(const Vertex& x, const Vertex& y) const {
    std::vector<Vertex> out;
    for (Label z : interval(label(x), label(y))) out.push_back(coords_of(z));
    return out;
  }

  friend bool operator==(const TruncatedPoset& a, const TruncatedPoset& b) {
    return a.max_level_ == b.max_level_;
  }

 private:
  void require(Label x) const {
    if (!contains(x))
      throw domain_error("label " + std::to_string(x) + " is outside the truncation at level " +
                         std::to_string(max_level_));
  }
  void require(const Vertex& v) const {
    if (!contains(v))
      throw domain_error("vertex " + to_string(v) + " is outside the truncation at level " +
                         std::to_string(max_level_));
  }

  Level max_level_;
};

inline TruncatedPoset truncate(Level max_level, const Limits& limits = {}) {
  return TruncatedPoset(max_level, limits);
}

/// Covering edges (<j,p>, <q,p+1>) of levels 1..N, generated on demand in
/// (p, j, q) order.
class HasseEdges {
 public:
  using value_type = std::pair<Vertex, Vertex>;

  class iterator {
   public:
    using iterator_concept = std::forward_iterator_tag;
    using iterator_category = std::forward_iterator_tag;
    using value_type = HasseEdges::value_type;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(Level level, Level max_level) : p_(level), max_level_(max_level) {}

    value_type operator*() const { return {Vertex{j_, p_}, Vertex{q_, p_ + 1}}; }

    iterator& operator++() {
      if (++q_ > level_size(p_ + 1)) {
        q_ = 1;
        if (++j_ > level_size(p_)) {
          j_ = 1;
          ++p_;
        }
      }
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++*this;
      return old;
    }

    friend bool operator==(const iterator& a, const iterator& b) {
      return a.p_ == b.p_ && a.j_ == b.j_ && a.q_ == b.q_;
    }

   private:
    Level p_ = 1;
    std::uint64_t j_ = 1;
    std::uint64_t q_ = 1;
    Level max_level_ = 1;
  };

  explicit HasseEdges(Level max_level, const Limits& limits = {}) : max_level_(max_level) {
    if (max_level < 2) throw domain_error("Hasse edges need at least two levels");
    check_guard(max_level, limits);
  }

  iterator begin() const { return iterator(1, max_level_); }
  iterator end() const { return iterator(max_level_, max_level_); }

  /// Sum over p = 1..N-1 of F(p) F(p+1).
  std::uint64_t size() const {
    std::uint64_t n = 0;
    for (Level p = 1; p < max_level_; ++p) n += level_size(p) * level_size(p + 1);
    return n;
  }

  Level max_level() const noexcept { return max_level_; }

 private:
  Level max_level_;
};

inline HasseEdges hasse_edges(Level max_level, const Limits& limits = {}) {
  return HasseEdges(max_level, limits);
}

inline std::string vertex_id(const Vertex& v) {
  return "v_" + std::to_string(v.row) + "_" + std::to_string(v.level);
}

/// Hasse diagram as a DOT digraph with edges pointing up a level.
inline std::string export_dot(Level max_level, const Limits& limits = {}) {
  const HasseEdges edges(max_level, limits);
  std::ostringstream out;
  out << "digraph cobweb {\n  rankdir=BT;\n";
  for (Level s = 1; s <= max_level; ++s)
    for (const Vertex& v : level_set(s)) out << "  " << vertex_id(v) << ";\n";
  for (const auto& [from, to] : edges)
    out << "  " << vertex_id(from) << " -> " << vertex_id(to) << ";\n";
  out << "}\n";
  return out.str();
}

/// Hasse diagram as a CSV edge list over natural labels.
inline std::string export_edges_csv(Level max_level, const Limits& limits = {}) {
  const HasseEdges edges(max_level, limits);
  std::ostringstream out;
  out << "from_label,to_label\n";
  for (const auto& [from, to] : edges) out << label_of(from) << ',' << label_of(to) << '\n';
  return out.str();
}

}  // namespace cobweb
