#pragma once

#include "ogk/gpd.hpp"

#include <atomic>
#include <exception>
#include <vector>

#include <omp.h>

namespace ogk::detail {

// Runs body(index, out) for index in [0, n), serially or across threads with
// per-thread buffers merged at the end.
template <class Body>
void sweep(std::size_t n, Exec exec, std::vector<Violation>& out, Body&& body) {
  if (exec == Exec::serial) {
    for (std::size_t x = 0; x < n; ++x) body(x, out);
    return;
  }
  const auto count = static_cast<long long>(n);
#pragma omp parallel
  {
    std::vector<Violation> local;
#pragma omp for schedule(dynamic, 8) nowait
    for (long long x = 0; x < count; ++x) body(static_cast<std::size_t>(x), local);
#pragma omp critical(ogk_sweep_merge)
    out.insert(out.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
  }
}

// Exceptions must not escape an OpenMP region; the first one is kept and rethrown.
class ErrorSlot {
public:
  template <class F>
  void guard(F&& f) {
    if (failed_.load(std::memory_order_relaxed)) return;
    try {
      f();
    } catch (...) {
#pragma omp critical(ogk_error_slot)
      if (!error_) error_ = std::current_exception();
      failed_ = true;
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

private:
  std::atomic<bool> failed_{false};
  std::exception_ptr error_;
};

} // namespace ogk::detail
