#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace kerrsq {

/// Calls fn(row) for every row in [0, rows), split into contiguous blocks over at most
/// `workers` threads. fn must only write to its own row. The first exception thrown
/// by any block is rethrown after all threads have joined.
template <typename Fn>
void for_each_row(Eigen::Index rows, unsigned workers, Fn&& fn) {
  const Eigen::Index n = std::clamp<Eigen::Index>(workers, 1, std::max<Eigen::Index>(rows, 1));
  if (n == 1) {
    for (Eigen::Index r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index w = 0; w < n; ++w) {
      const Eigen::Index begin = rows * w / n;
      const Eigen::Index end = rows * (w + 1) / n;
      pool.emplace_back([begin, end, &fn, &error = errors[static_cast<std::size_t>(w)]] {
        try {
          for (Eigen::Index r = begin; r < end; ++r) fn(r);
        } catch (...) {
          error = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace kerrsq
