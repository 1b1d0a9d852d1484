// Acceptance suite: one PASS/FAIL line per criterion, each with its time
// budget. Usage: cobweb_acceptance <path-to-cobweb-cli>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "cobweb/cobweb.hpp"
#include "oracle/brute_force.hpp"

using namespace cobweb;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(std::string why) {
    if (ok) detail = std::move(why);
    ok = false;
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_s;
  std::function<Outcome()> body;
};

oracle::Node node(Label x) {
  const Vertex v = coords_of(x);
  return {v.row, v.level};
}

std::string pair_text(Label a, Label b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// 1. Literal zeta_1 - zeta_0, the coordinate zeta and the order indicator
//    agree entrywise for N = 1..10.
Outcome zeta_forms() {
  Outcome out;
  for (Level n = 1; n <= 10 && out.ok; ++n) {
    const TruncatedPoset p(n);
    const auto natural = zeta_natural(p);
    const auto coord = zeta_coord(p);
    for (Label a = 1; a <= p.size() && out.ok; ++a)
      for (Label b = 1; b <= p.size(); ++b) {
        const Integer order = oracle::below_or_equal(node(a), node(b)) ? 1 : 0;
        const Integer literal = zeta_one_value(a, b, p.size()) - zeta_zero_value(a, b, p.size());
        if (natural.at(a, b) != order || coord.at(a, b) != order || literal != order ||
            zeta_coord_value(coords_of(a), coords_of(b), n) != order) {
          out.fail("N=" + std::to_string(n) + " mismatch at " + pair_text(a, b));
          break;
        }
      }
  }
  if (out.ok) out.detail = "N=1..10, up to 143x143";
  return out;
}

// 2. Recurrence = level formula = coordinate formula on every pair, N = 10.
Outcome mobius_three_way() {
  Outcome out;
  const TruncatedPoset p(10);
  std::size_t pairs = 0;
  for (Label a = 1; a <= p.size() && out.ok; ++a)
    for (Label b = 1; b <= p.size(); ++b, ++pairs) {
      const Vertex x = coords_of(a), y = coords_of(b);
      const Integer rec = mobius_recurrence(p, x, y);
      if (rec != mobius_levels(a, b) || rec != mobius_coords(x, y)) {
        out.fail("mismatch at " + pair_text(a, b));
        break;
      }
    }
  if (out.ok) out.detail = std::to_string(pairs) + " pairs";
  return out;
}

// 3. zeta * mu = mu * zeta = delta for N = 1..10; invert(zeta) = mu at N = 12.
Outcome inverse_identity() {
  Outcome out;
  for (Level n = 1; n <= 10 && out.ok; ++n) {
    const TruncatedPoset p(n);
    const auto zeta = zeta_coord(p);
    const auto mu = mobius_matrix(p, MobiusStrategy::explicit_formula);
    const auto one = delta(p);
    if (!(convolve(zeta, mu) == one) || !(convolve_generic(zeta, mu) == one))
      out.fail("zeta * mu != delta at N=" + std::to_string(n));
    else if (!(convolve(mu, zeta) == one) || !(convolve_generic(mu, zeta) == one))
      out.fail("mu * zeta != delta at N=" + std::to_string(n));
  }
  if (out.ok) {
    const TruncatedPoset p(12);
    if (!(invert(zeta_coord(p)) == mobius_matrix(p, MobiusStrategy::explicit_formula)))
      out.fail("invert(zeta) != mu at N=12");
  }
  if (out.ok) out.detail = "N=1..10 both orders; N=12 invert(zeta) = mu over 376x376";
  return out;
}

// 4. reconstruct(accumulate(f)) = f for random rational f on N = 8.
Outcome inversion_roundtrip() {
  Outcome out;
  const TruncatedPoset p(8);
  std::mt19937_64 rng(20240901);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 10007);
  std::uniform_int_distribution<Label> pick(1, p.size());
  const int samples = 150;
  int with_support = 0;
  for (int i = 0; i < samples && out.ok; ++i) {
    std::optional<Vertex> support;
    if (i % 3 == 0) {
      support = coords_of(pick(rng));
      ++with_support;
    }
    PosetFunction f(p, support);
    for (Label x = 1; x <= p.size(); ++x)
      if (!support || le(*support, coords_of(x))) f.set(x, Rational(num(rng), den(rng)));
    if (!(reconstruct(accumulate(f)) == f)) out.fail("sample " + std::to_string(i));
  }
  if (out.ok)
    out.detail = std::to_string(samples) + " functions, " + std::to_string(with_support) +
                 " with a support vertex";
  return out;
}

// 5. eta^k = DFS chain counts, and saturated chains = prod F(l), N <= 7.
Outcome chain_counts() {
  Outcome out;
  const Level n = 7;
  const TruncatedPoset p(n);
  for (unsigned k = 0; k <= n && out.ok; ++k) {
    const auto power = eta_power(p, k);
    for (Label a = 1; a <= p.size() && out.ok; ++a)
      for (Label b = 1; b <= p.size(); ++b) {
        if (!p.le(a, b)) continue;
        if (power.at(a, b) != oracle::oracle_chains(n, node(a), node(b), k)) {
          out.fail("eta^" + std::to_string(k) + " mismatch at " + pair_text(a, b));
          break;
        }
      }
  }
  for (Label a = 1; a <= p.size() && out.ok; ++a)
    for (Label b = 1; b <= p.size(); ++b) {
      const Vertex x = coords_of(a), y = coords_of(b);
      const Integer dfs = oracle::oracle_saturated_chains(n, node(a), node(b));
      Integer product = 0;
      if (x == y) {
        product = 1;
      } else if (x.level < y.level) {
        product = 1;
        for (Level l = x.level + 1; l < y.level; ++l) product *= fib(l);
      }
      if (product != dfs || count_maximal_chains(p, x, y) != dfs) {
        out.fail("saturated chains mismatch at " + pair_text(a, b));
        break;
      }
    }
  if (out.ok) out.detail = "all pairs, k=0..7";
  return out;
}

// 6. Vanishing and sign laws over N = 10.
Outcome vanishing_and_sign() {
  Outcome out;
  const TruncatedPoset p(10);
  const auto mu = mobius_matrix(p, MobiusStrategy::recurrence);
  std::size_t checked = 0;
  for (Label a = 1; a <= p.size() && out.ok; ++a)
    for (Label b = 1; b <= p.size(); ++b) {
      const Level t = level_of(a), v = level_of(b);
      if (v < t + 2) continue;
      ++checked;
      const bool contains_one_or_two = (t < 1 && 1 < v) || (t < 2 && 2 < v);
      const int sign = sgn(mu.at(a, b));
      const int expected = contains_one_or_two ? 0 : ((v - t) % 2 == 0 ? 1 : -1);
      if (sign != expected) {
        out.fail("law violated at " + pair_text(a, b));
        break;
      }
    }
  if (out.ok) out.detail = std::to_string(checked) + " pairs with level gap >= 2";
  return out;
}

// 7. Identical checksums and ordered multiplication counters at N = 12.
Outcome benchmark_sanity() {
  Outcome out;
  const BenchReport report = bench_strategies(12, 1);
  const auto e = report.row(MobiusStrategy::explicit_formula).multiplications;
  const auto r = report.row(MobiusStrategy::recurrence).multiplications;
  const auto m = report.row(MobiusStrategy::matrix_inverse).multiplications;
  if (!report.checksums_agree) out.fail("checksums differ");
  if (!(e < r && r < m)) out.fail("counter order violated");
  out.detail = (out.ok ? "" : out.detail + "; ") + "multiplications " + std::to_string(e) + " < " +
               std::to_string(r) + " < " + std::to_string(m) + ", checksum " +
               report.rows.front().checksum;
  return out;
}

// 8. CLI: verify exits 0 at N = 8; DOT/CSV outputs are byte-identical.
Outcome cli_contract(const std::string& cli) {
  Outcome out;
  const auto verify = cli_test::run(cli + " verify --max-level 8");
  if (verify.exit_code != 0) out.fail("verify -n 8 exited " + std::to_string(verify.exit_code));
  for (const char* args : {"hasse -n 7", "hasse -n 7 --format csv", "matrix --kind mobius -n 6",
                           "matrix --kind zeta -n 6", "levels -n 10"}) {
    const auto a = cli_test::run(cli + " " + args);
    const auto b = cli_test::run(cli + " " + args);
    if (a.exit_code != 0 || a.out.empty() || a.out != b.out)
      out.fail(std::string("nondeterministic or failing: ") + args);
  }
  if (out.ok) out.detail = "verify exit 0; 5 outputs byte-identical";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cobweb_acceptance <path-to-cobweb-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  const std::vector<Criterion> criteria = {
      {"AC1", "zeta-form equivalence", 5, zeta_forms},
      {"AC2", "three-way Mobius agreement", 10, mobius_three_way},
      {"AC3", "inverse identity", 30, inverse_identity},
      {"AC4", "Mobius inversion roundtrip", 10, inversion_roundtrip},
      {"AC5", "chain-count oracle", 30, chain_counts},
      {"AC6", "vanishing and sign laws", 60, vanishing_and_sign},
      {"AC7", "benchmark sanity", 60, benchmark_sanity},
      {"AC8", "CLI contract", 60, [&] { return cli_contract(cli); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
      result = c.body();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (result.ok && seconds > c.budget_s) result.fail("over time budget");
    if (!result.ok) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", seconds, c.budget_s);
    std::cout << (result.ok ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.title << " (" << timing
              << ")";
    if (!result.detail.empty()) std::cout << ": " << result.detail;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
