#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "crystallize/poly.hpp"
#include "crystallize/rootfind.hpp"

namespace crystallize {

/// Worker count from CRYSTALLIZE_THREADS, else 1.
int default_thread_count();

/// Calls body(i) for every i in [0, count) using up to `threads` workers.
/// Each index is visited exactly once; results must be written to per-index
/// slots so the outcome does not depend on the partition.
void parallel_for_index(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body);

struct EnsembleRunOptions {
  int threads = 1;
  SampledRootOptions roots{};
};

/// Real zeros of every realization's p-th derivative, in [0, 2*pi), ordered by
/// realization index.
std::vector<std::vector<double>> ensemble_real_roots(const EnsembleSpec& spec, const EnsembleRunOptions& options = {});

/// Same, mapped to the rescaled coordinate N x / pi.
std::vector<std::vector<double>> ensemble_rescaled_roots(const EnsembleSpec& spec,
                                                         const EnsembleRunOptions& options = {});

}  // namespace crystallize
