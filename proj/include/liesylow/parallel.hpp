#ifndef LIESYLOW_PARALLEL_HPP
#define LIESYLOW_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace liesylow {

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Applies fn to every item on `jobs` workers. Results come back in input
/// order, so output never depends on the worker count. The first exception
/// thrown by fn is rethrown after all workers stop.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& items, unsigned jobs, Fn fn)
    -> std::vector<std::invoke_result_t<Fn&, const In&>> {
  using Out = std::invoke_result_t<Fn&, const In&>;
  std::vector<std::optional<Out>> slots(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size() && !failed; i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  std::vector<Out> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace liesylow

#endif  // LIESYLOW_PARALLEL_HPP
