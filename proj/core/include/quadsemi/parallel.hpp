#ifndef QUADSEMI_PARALLEL_HPP
#define QUADSEMI_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace quadsemi {

/// Worker budget handed down from the CLI. Results never depend on `threads`.
struct Parallelism {
  unsigned threads = 1;

  static Parallelism hardware() {
    return Parallelism{std::max(1U, std::thread::hardware_concurrency())};
  }
};

/// Splits [0, n) into contiguous chunks, runs `fn(begin, end)` for each chunk
/// on up to `par.threads` workers, and returns the chunk results in range order.
/// The chunking depends only on n, so merged output is thread-count independent.
template <class Fn>
auto parallel_chunks(std::size_t n, Parallelism par, Fn fn) {
  using Result = decltype(fn(std::size_t{0}, std::size_t{0}));
  constexpr std::size_t kChunks = 64;
  const std::size_t chunk_count = std::max<std::size_t>(1, std::min(n, kChunks));
  std::vector<Result> results(chunk_count);
  auto bounds = [&](std::size_t c) {
    return std::pair{n * c / chunk_count, n * (c + 1) / chunk_count};
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(par.threads, chunk_count));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) {
      auto [b, e] = bounds(c);
      results[c] = fn(b, e);
    }
    return results;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = w; c < chunk_count; c += workers) {
            auto [b, e] = bounds(c);
            results[c] = fn(b, e);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return results;
}

}  // namespace quadsemi

#endif  // QUADSEMI_PARALLEL_HPP
