#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "cobweb/arithmetic.hpp"
#include "cobweb/incidence.hpp"
#include "cobweb/mobius.hpp"
#include "cobweb/poset.hpp"

namespace cobweb {

/// FNV-1a over "a,b,value;" for every nonzero entry in label order, as 16 hex
/// digits.
template <class Ring>
std::string checksum(const BasicIncidence<Ring>& f) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
  };
  f.for_each_nonzero([&](Label a, Label b, const Ring& v) {
    feed(std::to_string(a) + "," + std::to_string(b) + "," + to_string(v) + ";");
  });
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

struct BenchRow {
  MobiusStrategy strategy;
  Level max_level = 0;
  std::uint64_t repetitions = 0;
  double wall_ms = 0;      // mean over repetitions
  double min_wall_ms = 0;
  std::uint64_t multiplications = 0;  // per run
  std::size_t peak_value_bits = 0;
  std::string checksum;
};

struct BenchReport {
  Level max_level = 0;
  std::vector<BenchRow> rows;
  bool checksums_agree = false;

  const BenchRow& row(MobiusStrategy s) const {
    for (const auto& r : rows)
      if (r.strategy == s) return r;
    throw domain_error("strategy missing from report");
  }
};

/// Times every Mobius strategy on levels 1..N. Each strategy first runs
/// once with an operation counter and its matrix is checksummed; timing
/// repetitions follow.
inline BenchReport bench_strategies(Level max_level, std::uint64_t repetitions,
                                    const Limits& limits = {}) {
  if (repetitions == 0) throw domain_error("repetitions must be positive");
  const TruncatedPoset poset(max_level, limits);
  BenchReport report;
  report.max_level = max_level;

  for (MobiusStrategy s : kAllStrategies) {
    BenchRow row;
    row.strategy = s;
    row.max_level = max_level;
    row.repetitions = repetitions;

    OpCounter counter;
    const IntegerIncidence mu = mobius_matrix(poset, s, &counter);
    row.multiplications = counter.multiplications;
    row.checksum = checksum(mu);
    mu.for_each_nonzero([&](Label, Label, const Integer& v) {
      row.peak_value_bits = std::max(row.peak_value_bits, bit_size(v));
    });

    double total = 0;
    row.min_wall_ms = 0;
    for (std::uint64_t i = 0; i < repetitions; ++i) {
      const auto start = std::chrono::steady_clock::now();
      const IntegerIncidence again = mobius_matrix(poset, s);
      const auto stop = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
      total += ms;
      row.min_wall_ms = i == 0 ? ms : std::min(row.min_wall_ms, ms);
      (void)again;
    }
    row.wall_ms = total / static_cast<double>(repetitions);
    report.rows.push_back(std::move(row));
  }

  report.checksums_agree = std::all_of(report.rows.begin(), report.rows.end(), [&](const auto& r) {
    return r.checksum == report.rows.front().checksum;
  });
  return report;
}

inline nlohmann::ordered_json to_json(const BenchReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"strategy", std::string(to_string(r.strategy))},
                    {"N", r.max_level},
                    {"wall_ms", r.wall_ms},
                    {"min_wall_ms", r.min_wall_ms},
                    {"repetitions", r.repetitions},
                    {"multiplications", r.multiplications},
                    {"peak_value_bits", r.peak_value_bits},
                    {"checksum", r.checksum}});
  }
  return {{"N", report.max_level}, {"checksums_agree", report.checksums_agree}, {"rows", rows}};
}

}  // namespace cobweb
