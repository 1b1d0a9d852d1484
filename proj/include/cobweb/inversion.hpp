#pragma once

// Mobius inversion on a truncated cobweb poset.
//
// accumulate:  g(x) = sum_{y <= x} f(y)
// reconstruct: f(x) = sum_{y <= x} g(y) mu(y, x)
//
// Both sums only see whole lower levels plus the point itself, so they are
// evaluated through per-level totals.

#include <nlohmann/json.hpp>

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cobweb/arithmetic.hpp"
#include "cobweb/error.hpp"
#include "cobweb/fibonacci.hpp"
#include "cobweb/mobius.hpp"
#include "cobweb/poset.hpp"

namespace cobweb {

/// Rational-valued function on the vertices of a truncation, optionally
/// declared to vanish outside the up-set of a base vertex p.
class PosetFunction {
 public:
  explicit PosetFunction(TruncatedPoset poset, std::optional<Vertex> support = std::nullopt)
      : poset_(poset), values_(poset.size() + 1) {
    if (support) declare_support(*support);
  }

  const TruncatedPoset& poset() const noexcept { return poset_; }
  const std::optional<Vertex>& support() const noexcept { return support_; }

  const Rational& at(Label x) const {
    poset_.vertex(x);  // range check
    return values_[x];
  }
  const Rational& at(const Vertex& v) const { return values_[poset_.label(v)]; }

  void set(const Vertex& v, const Rational& value) { set(poset_.label(v), value); }

  void set(Label x, const Rational& value) {
    const Vertex v = poset_.vertex(x);
    if (support_ && value != 0 && !le(*support_, v))
      throw domain_error("value at " + to_string(v) + " lies outside the declared support " +
                         to_string(*support_));
    values_[x] = value;
    normalize(values_[x]);
  }

  /// Declares f(x) = 0 unless x >= p; existing values must already comply.
  void declare_support(const Vertex& p) {
    if (!poset_.contains(p))
      throw domain_error("support vertex " + to_string(p) + " is outside the truncation");
    for (Label x = 1; x <= poset_.size(); ++x)
      if (values_[x] != 0 && !le(p, coords_of(x)))
        throw domain_error("value at " + to_string(coords_of(x)) +
                           " lies outside the declared support " + to_string(p));
    support_ = p;
  }

  /// Values indexed by label; element 0 is unused.
  std::span<const Rational> values() const noexcept { return values_; }

  friend bool operator==(const PosetFunction& f, const PosetFunction& g) {
    return f.poset_ == g.poset_ && f.values_ == g.values_;
  }

 private:
  TruncatedPoset poset_;
  std::optional<Vertex> support_;
  std::vector<Rational> values_;
};

namespace detail {

// totals[t] = sum of f over level t.
inline std::vector<Rational> level_totals(const PosetFunction& f) {
  const Level n = f.poset().max_level();
  std::vector<Rational> totals(n + 1);
  for (Level t = 1; t <= n; ++t)
    for (Label x = first_label(t); x <= last_label(t); ++x) totals[t] += f.values()[x];
  return totals;
}

}  // namespace detail

/// g(<s,t>) = sum of f over levels 1..t-1, plus f(<s,t>).
inline PosetFunction accumulate(const PosetFunction& f) {
  const TruncatedPoset& poset = f.poset();
  const auto totals = detail::level_totals(f);
  PosetFunction g(poset);
  Rational below = 0;
  for (Level t = 1; t <= poset.max_level(); ++t) {
    for (Label x = first_label(t); x <= last_label(t); ++x) g.set(x, below + f.values()[x]);
    below += totals[t];
  }
  if (f.support()) g.declare_support(*f.support());
  return g;
}

/// f(<s,t>) = g(<s,t>) + sum over v < t of (level-v total of g) * mu(<.,v>, <s,t>).
/// mu between distinct levels does not depend on rows.
inline PosetFunction reconstruct(const PosetFunction& g) {
  const TruncatedPoset& poset = g.poset();
  const Level n = poset.max_level();
  const auto totals = detail::level_totals(g);

  std::vector<Rational> lower(n + 1);  // lower[t] = sum_{v<t} totals[v] mu(v, t)
  for (Level t = 2; t <= n; ++t)
    for (Level v = 1; v < t; ++v) {
      if (totals[v] == 0) continue;
      const Integer mu = mobius_coords(Vertex{1, v}, Vertex{1, t});
      if (mu != 0) lower[t] += totals[v] * Rational(mu);
    }

  PosetFunction f(poset);
  for (Level t = 1; t <= n; ++t)
    for (Label x = first_label(t); x <= last_label(t); ++x) f.set(x, g.values()[x] + lower[t]);
  if (g.support()) f.declare_support(*g.support());
  return f;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline Vertex vertex_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_object() || !j.contains("row") || !j.contains("level"))
    throw domain_error(std::string(what) + " needs integer fields \"row\" and \"level\"");
  const auto& row = j.at("row");
  const auto& level = j.at("level");
  if (!row.is_number_integer() || !level.is_number_integer() || row.get<std::int64_t>() < 1 ||
      level.get<std::int64_t>() < 1 || level.get<std::int64_t>() > kMaxLevel)
    throw domain_error(std::string(what) + " has a non-positive or oversized row/level");
  return Vertex{row.get<std::uint64_t>(), level.get<Level>()};
}

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  throw domain_error("values must be integers or strings of the form \"p\" or \"p/q\"");
}

}  // namespace detail

/// Reads {"max_level": N, "values": [{"row": u, "level": v, "value": "p/q"}, ...],
///        "support": {"row": p1, "level": p2}}.
/// "support" is optional; omitted vertices are zero. A max_level argument,
/// when given, takes precedence over the document's.
inline PosetFunction poset_function_from_json(const nlohmann::json& doc,
                                              std::optional<Level> max_level = std::nullopt,
                                              const Limits& limits = {}) {
  if (!doc.is_object()) throw domain_error("poset function JSON must be an object");
  if (!max_level) {
    if (!doc.contains("max_level") || !doc.at("max_level").is_number_integer() ||
        doc.at("max_level").get<std::int64_t>() < 1)
      throw domain_error("\"max_level\" must be a positive integer");
    const auto n = doc.at("max_level").get<std::int64_t>();
    if (n > static_cast<std::int64_t>(kMaxLevel))
      throw size_limit_error("max_level " + std::to_string(n) + " is too large",
                             limits.max_elements);
    max_level = static_cast<Level>(n);
  }
  PosetFunction f{TruncatedPoset(*max_level, limits)};

  if (doc.contains("values")) {
    const auto& values = doc.at("values");
    if (!values.is_array()) throw domain_error("\"values\" must be an array");
    std::set<Label> seen;
    for (const auto& entry : values) {
      const Vertex v = detail::vertex_from_json(entry, "value entry");
      if (!f.poset().contains(v))
        throw domain_error("vertex " + to_string(v) + " is outside the truncation at level " +
                           std::to_string(*max_level));
      if (!entry.contains("value")) throw domain_error("value entry lacks \"value\"");
      if (!seen.insert(label_of(v)).second)
        throw domain_error("vertex " + to_string(v) + " appears twice");
      f.set(v, detail::rational_from_json(entry.at("value")));
    }
  }
  if (doc.contains("support")) f.declare_support(detail::vertex_from_json(doc.at("support"), "support"));
  return f;
}

/// Nonzero values only, in label order.
inline nlohmann::ordered_json to_json(const PosetFunction& f) {
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (Label x = 1; x <= f.poset().size(); ++x) {
    const Rational& value = f.values()[x];
    if (value == 0) continue;
    const Vertex v = coords_of(x);
    values.push_back({{"row", v.row}, {"level", v.level}, {"value", to_string(value)}});
  }
  nlohmann::ordered_json doc = {{"max_level", f.poset().max_level()}, {"values", values}};
  if (f.support())
    doc["support"] = {{"row", f.support()->row}, {"level", f.support()->level}};
  return doc;
}

}  // namespace cobweb
