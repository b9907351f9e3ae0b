#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace qop {

// Runs fn(i) for i in [0, n). Work is chunked; results must be written to
// per-index slots by the caller, so the parallel run stays deterministic.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  int workers = std::min<std::size_t>(jobs, n);
  std::vector<std::thread> threads;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& t : threads) t.join();
}

inline int default_jobs() {
  unsigned hc = std::thread::hardware_concurrency();
  if (hc == 0) hc = 1;
  return static_cast<int>(std::min(hc, 8u));
}

// Parity of the permutation sending word to its sorted order.
// Elements must be pairwise distinct.
template <typename T>
int sort_parity(std::vector<T> word) {
  int parity = 1;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    std::size_t m = i;
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (word[j] < word[m]) m = j;
    if (m != i) {
      std::swap(word[i], word[m]);
      parity = -parity;
    }
  }
  return parity;
}

// Parity of the permutation taking `from` to `to` (same multiset, distinct
// elements).
template <typename T>
int relative_parity(const std::vector<T>& from, const std::vector<T>& to) {
  return sort_parity(from) * sort_parity(to);
}

}  // namespace qop
