#include "crystallize/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "crystallize/statistics.hpp"

namespace crystallize {

int default_thread_count() {
  if (const char* env = std::getenv("CRYSTALLIZE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void parallel_for_index(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  const int workers = static_cast<int>(std::clamp<std::int64_t>(threads, 1, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::vector<double>> ensemble_real_roots(const EnsembleSpec& spec, const EnsembleRunOptions& options) {
  spec.validate();
  std::vector<std::vector<double>> roots(static_cast<std::size_t>(spec.realizations));
  parallel_for_index(spec.realizations, options.threads, [&](std::int64_t i) {
    roots[static_cast<std::size_t>(i)] = real_roots_sampled(sample_derivative(spec, i), options.roots).real_roots;
  });
  return roots;
}

std::vector<std::vector<double>> ensemble_rescaled_roots(const EnsembleSpec& spec,
                                                         const EnsembleRunOptions& options) {
  auto roots = ensemble_real_roots(spec, options);
  for (auto& r : roots) r = rescale_zeros(r, spec.degree);
  return roots;
}

}  // namespace crystallize
