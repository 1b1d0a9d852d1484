#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cobweb/arithmetic.hpp"
#include "cobweb/error.hpp"

namespace cobweb {

/// Positive integer naming a vertex; labels run level by level, left to
/// right, starting at 1.
using Label = std::uint64_t;

/// Level index (1-based).
using Level = std::uint32_t;

namespace detail {

// F(0) .. F(93); F(93) is the largest Fibonacci number below 2^64.
inline constexpr std::size_t kWordFibCount = 94;

constexpr std::array<std::uint64_t, kWordFibCount> make_word_fib() {
  std::array<std::uint64_t, kWordFibCount> f{};
  f[0] = 0;
  f[1] = 1;
  for (std::size_t i = 2; i < kWordFibCount; ++i) f[i] = f[i - 1] + f[i - 2];
  return f;
}

inline constexpr auto kWordFib = make_word_fib();

class FibTable {
 public:
  Integer get(std::size_t n) {
    {
      std::shared_lock lock(mutex_);
      if (n < values_.size()) return values_[n];
    }
    std::unique_lock lock(mutex_);
    if (values_.empty()) {
      values_.emplace_back(0);
      values_.emplace_back(1);
    }
    values_.reserve(n + 1);
    while (values_.size() <= n) {
      const std::size_t k = values_.size();
      values_.push_back(values_[k - 1] + values_[k - 2]);
    }
    return values_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<Integer> values_;
};

inline FibTable& fib_table() {
  static FibTable table;
  return table;
}

}  // namespace detail

/// Highest level whose labels fit in a Label.
inline constexpr Level kMaxLevel = 91;

/// Largest representable label, F(93) - 1.
inline constexpr Label kMaxLabel = detail::kWordFib[kMaxLevel + 2] - 1;

/// F(n) with F(0) = 0, F(1) = F(2) = 1. Exact for every n.
inline Integer fib(std::size_t n) {
  if (n < detail::kWordFibCount) {
    Integer v;
    mpz_import(v.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &detail::kWordFib[n]);
    return v;
  }
  return detail::fib_table().get(n);
}

/// F(n) as a machine word, for n <= 93.
constexpr std::uint64_t fib_word(std::size_t n) {
  if (n >= detail::kWordFibCount)
    throw domain_error("Fibonacci index " + std::to_string(n) + " exceeds 64-bit range");
  return detail::kWordFib[n];
}

/// Number of vertices in level `level`.
constexpr std::uint64_t level_size(Level level) { return fib_word(level); }

/// First label of level `level`, F(level + 1).
constexpr Label first_label(Level level) { return fib_word(level + 1); }

/// Last label of level `level`, F(level + 2) - 1.
constexpr Label last_label(Level level) { return fib_word(level + 2) - 1; }

/// The unique k with F(k+1) <= x <= F(k+2) - 1.
inline Level level_of(Label x) {
  if (x == 0) throw domain_error("labels start at 1");
  if (x > kMaxLabel)
    throw domain_error("label " + std::to_string(x) + " exceeds the largest supported label");
  // First index i >= 3 with F(i) > x; then x lies in level i - 2.
  const auto begin = detail::kWordFib.begin() + 3;
  const auto it = std::upper_bound(begin, detail::kWordFib.end(), x);
  return static_cast<Level>((it - detail::kWordFib.begin()) - 2);
}

}  // namespace cobweb
