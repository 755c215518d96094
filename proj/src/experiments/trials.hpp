#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "satconc/errors.hpp"

namespace satconc::experiments {

/// 0 means: SATCONC_THREADS if set, else the hardware concurrency.
int resolve_threads(int requested);

/// Calls body(i) for i in [0, count) on a pool of workers. The first exception thrown by any
/// call is rethrown after all workers stop.
void parallel_for(long count, int threads, const std::function<void(long)>& body);

/// Runs fn(i) for every trial; trials that throw ResourceError yield nullopt. Results are
/// stored by trial index, so any reduction over them in index order is thread-count independent.
template <class R, class Fn>
std::vector<std::optional<R>> run_trials(long count, int threads, Fn&& fn) {
  std::vector<std::optional<R>> out(static_cast<std::size_t>(count));
  parallel_for(count, threads, [&](long i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(i);
    } catch (const ResourceError&) {
      out[static_cast<std::size_t>(i)].reset();
    }
  });
  return out;
}

}  // namespace satconc::experiments
