#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cobweb/arithmetic.hpp"
#include "cobweb/incidence.hpp"
#include "cobweb/inversion.hpp"
#include "cobweb/mobius.hpp"
#include "cobweb/poset.hpp"

namespace cobweb {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  Level max_level = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

namespace detail {

inline std::string pair_text(Label a, Label b) {
  return "(" + to_string(coords_of(a)) + ", " + to_string(coords_of(b)) + ")";
}

inline CheckResult check_zeta_forms(const TruncatedPoset& poset) {
  CheckResult r{"zeta forms agree with the order relation", true, ""};
  const auto natural = zeta_natural(poset);
  const auto coord = zeta_coord(poset);
  for (Label a = 1; a <= poset.size() && r.passed; ++a)
    for (Label b = 1; b <= poset.size(); ++b) {
      const Integer expected = poset.le(a, b) ? 1 : 0;
      if (natural.at(a, b) != expected || coord.at(a, b) != expected) {
        r = {r.name, false, "mismatch at " + pair_text(a, b)};
        break;
      }
    }
  if (r.passed) r.detail = std::to_string(poset.size() * poset.size()) + " entries";
  return r;
}

inline CheckResult check_mobius_forms(const TruncatedPoset& poset) {
  CheckResult r{"recurrence, level and coordinate Mobius forms agree", true, ""};
  const auto by_recurrence = mobius_matrix(poset, MobiusStrategy::recurrence);
  for (Label a = 1; a <= poset.size() && r.passed; ++a) {
    const Vertex x = coords_of(a);
    for (Label b = 1; b <= poset.size(); ++b) {
      const Vertex y = coords_of(b);
      const Integer levels = mobius_levels(a, b);
      if (by_recurrence.at(a, b) != levels || mobius_coords(x, y) != levels) {
        r = {r.name, false, "mismatch at " + pair_text(a, b)};
        break;
      }
    }
  }
  if (r.passed) r.detail = std::to_string(poset.size() * poset.size()) + " pairs";
  return r;
}

inline CheckResult check_inverse_identity(const TruncatedPoset& poset) {
  CheckResult r{"zeta * mu = mu * zeta = delta and invert(zeta) = mu", true, ""};
  const auto zeta = zeta_coord(poset);
  const auto mu = mobius_matrix(poset, MobiusStrategy::explicit_formula);
  const auto one = delta(poset);
  if (!(convolve(zeta, mu) == one))
    r = {r.name, false, "zeta * mu differs from delta"};
  else if (!(convolve(mu, zeta) == one))
    r = {r.name, false, "mu * zeta differs from delta"};
  else if (!(convolve_generic(zeta, mu) == one))
    r = {r.name, false, "generic zeta * mu differs from delta"};
  else if (!(invert(zeta) == mu))
    r = {r.name, false, "invert(zeta) differs from mu"};
  return r;
}

inline CheckResult check_inversion_roundtrip(const TruncatedPoset& poset, int samples) {
  CheckResult r{"Mobius inversion roundtrip", true, ""};
  std::mt19937_64 rng(0x5eedULL + poset.max_level());
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 12);
  std::uniform_int_distribution<Label> pick(1, poset.size());

  for (int i = 0; i < samples && r.passed; ++i) {
    std::optional<Vertex> support;
    if (i % 3 == 2) support = coords_of(pick(rng));
    PosetFunction f(poset);
    for (Label x = 1; x <= poset.size(); ++x) {
      if (support && !le(*support, coords_of(x))) continue;
      f.set(x, Rational(num(rng), den(rng)));
    }
    if (support) f.declare_support(*support);
    const auto g = accumulate(f);
    if (!(reconstruct(g) == f))
      r = {r.name, false, "reconstruct(accumulate(f)) != f for sample " + std::to_string(i)};
    else if (!(accumulate(reconstruct(f)) == f))
      r = {r.name, false, "accumulate(reconstruct(f)) != f for sample " + std::to_string(i)};
  }
  if (r.passed) r.detail = std::to_string(samples) + " random functions";
  return r;
}

inline CheckResult check_chain_counts(const TruncatedPoset& poset) {
  CheckResult r{"eta powers count saturated chains", true, ""};
  const Level n = poset.max_level();
  auto power = delta(poset);
  const auto step = eta(poset);
  for (Level gap = 1; gap <= n && r.passed; ++gap) {
    power = convolve(power, step);
    if (gap == n) {
      if (power.nonzero_count() != 0) r = {r.name, false, "eta^N is not zero"};
      break;
    }
    for (Level t = 1; t + gap <= n && r.passed; ++t) {
      Integer product = 1;
      for (Level l = t + 1; l < t + gap; ++l) product *= fib(l);
      // eta^gap between levels t and t+gap is constant across rows.
      for (Label a = first_label(t); a <= last_label(t) && r.passed; ++a)
        for (Label b = first_label(t + gap); b <= last_label(t + gap); ++b)
          if (power.at(a, b) != product) {
            r = {r.name, false, "eta^" + std::to_string(gap) + " mismatch at " + pair_text(a, b)};
            break;
          }
    }
  }
  return r;
}

}  // namespace detail

/// Runs the invariant suite on levels 1..N.
inline VerificationReport run_verification(Level max_level, const Limits& limits = {},
                                           int roundtrip_samples = 20) {
  const TruncatedPoset poset(max_level, limits);
  VerificationReport report;
  report.max_level = max_level;
  report.checks.push_back(detail::check_zeta_forms(poset));
  report.checks.push_back(detail::check_mobius_forms(poset));
  report.checks.push_back(detail::check_inverse_identity(poset));
  report.checks.push_back(detail::check_inversion_roundtrip(poset, roundtrip_samples));
  report.checks.push_back(detail::check_chain_counts(poset));
  return report;
}

inline std::string to_text(const VerificationReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  out << (report.passed() ? "all checks passed" : "verification failed") << " at N="
      << report.max_level << '\n';
  return out.str();
}

}  // namespace cobweb
